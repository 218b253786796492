// SPDX-License-Identifier: MIT
#include "upt/embedding.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace upt {

int PlanarEmbedding::next(int d) const {
  int e = d >> 1;
  int b = head(d);
  const auto& rot = rotation[b];
  auto it = std::find(rot.begin(), rot.end(), e);
  ++it;
  if (it == rot.end()) it = rot.begin();
  return dart_from(*it, b);
}

PlanarEmbedding make_embedding(const Digraph& g, std::vector<std::vector<int>> rotation,
                               int outer_dart) {
  PlanarEmbedding emb;
  emb.n = g.n();
  for (const Edge& e : g.edges()) emb.ends.emplace_back(e.tail, e.head);
  emb.rotation = std::move(rotation);
  emb.rotation.resize(g.n());
  emb.outer_dart = g.m() > 0 ? outer_dart : -1;
  return emb;
}

PlanarEmbedding mirror(const PlanarEmbedding& emb) {
  PlanarEmbedding r = emb;
  for (auto& rot : r.rotation) std::reverse(rot.begin(), rot.end());
  // The outer face of the mirror is traced by the reversed darts.
  if (r.outer_dart >= 0) r.outer_dart ^= 1;
  return r;
}

Faces trace_faces(const PlanarEmbedding& emb) {
  Faces f;
  const int darts = 2 * emb.m();
  f.face_of_dart.assign(darts, -1);
  std::vector<std::vector<int>> walks;
  for (int d0 = 0; d0 < darts; ++d0) {
    if (f.face_of_dart[d0] >= 0) continue;
    std::vector<int> walk;
    int d = d0;
    do {
      f.face_of_dart[d] = 0;
      walk.push_back(d);
      d = emb.next(d);
    } while (d != d0);
    std::rotate(walk.begin(), std::min_element(walk.begin(), walk.end()), walk.end());
    walks.push_back(std::move(walk));
  }
  std::sort(walks.begin(), walks.end());
  int faces = emb.m() == 0 ? 1 : static_cast<int>(walks.size());
  if (emb.n - emb.m() + faces != 2)
    throw NonPlanarRotation("V - E + F = " + std::to_string(emb.n - emb.m() + faces));
  for (int i = 0; i < static_cast<int>(walks.size()); ++i)
    for (int d : walks[i]) f.face_of_dart[d] = i;
  f.walks = std::move(walks);
  if (emb.outer_dart >= 0) f.outer = f.face_of_dart[emb.outer_dart];
  return f;
}

std::vector<Angle> angles(const Digraph& g, const PlanarEmbedding& emb, const Faces& faces) {
  std::vector<Angle> out(2 * emb.m());
  for (int d = 0; d < 2 * emb.m(); ++d) {
    Angle& a = out[d];
    a.face = faces.face_of_dart[d];
    a.vertex = emb.head(d);
    a.e1 = d >> 1;
    a.e2 = emb.next(d) >> 1;
    bool in1 = g.edge(a.e1).head == a.vertex;
    bool in2 = g.edge(a.e2).head == a.vertex;
    a.flat = in1 != in2;
  }
  return out;
}

UpCheck check_up_conditions(const Digraph& g, const PlanarEmbedding& emb,
                            const AngleAssignment& lambda) {
  Faces faces = trace_faces(emb);
  auto ang = angles(g, emb, faces);
  UpCheck r;
  auto fail = [&](const char* cond, int v, int f) {
    r.ok = false;
    r.condition = cond;
    r.vertex = v;
    r.face = f;
    return r;
  };
  if (lambda.size() != ang.size()) return fail("UP0", -1, -1);
  for (size_t d = 0; d < ang.size(); ++d) {
    int l = lambda[d];
    bool good = ang[d].flat ? l == 0 : (l == 1 || l == -1);
    if (!good) return fail("UP0", ang[d].vertex, ang[d].face);
  }
  std::vector<int> large(g.n(), 0), flat(g.n(), 0);
  for (size_t d = 0; d < ang.size(); ++d) {
    if (lambda[d] == 1) ++large[ang[d].vertex];
    if (lambda[d] == 0) ++flat[ang[d].vertex];
  }
  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) == 0) continue;
    if (g.is_switch(v)) {
      if (large[v] != 1) return fail("UP1", v, -1);
    } else if (large[v] != 0 || flat[v] != 2) {
      return fail("UP2", v, -1);
    }
  }
  std::vector<int> plus(faces.count(), 0), minus(faces.count(), 0);
  for (size_t d = 0; d < ang.size(); ++d) {
    if (lambda[d] == 1) ++plus[ang[d].face];
    if (lambda[d] == -1) ++minus[ang[d].face];
  }
  for (int f = 0; f < faces.count(); ++f) {
    int want = f == faces.outer ? minus[f] + 2 : minus[f] - 2;
    if (plus[f] != want) return fail("UP3", -1, f);
  }
  return r;
}

std::optional<AngleAssignment> fixed_embedding_test(const Digraph& g,
                                                    const PlanarEmbedding& emb) {
  Faces faces = trace_faces(emb);
  auto ang = angles(g, emb, faces);
  AngleAssignment lambda(ang.size(), 0);

  // UP2 needs exactly two flat angles at every non-switch vertex; this is a
  // property of the rotation alone and is checked before the flow.
  std::vector<int> flats(g.n(), 0);
  for (const Angle& a : ang) flats[a.vertex] += a.flat;
  for (int v = 0; v < g.n(); ++v)
    if (!g.is_switch(v) && flats[v] != 2) return std::nullopt;

  FlowNetwork net;
  std::vector<int> source_of(g.n(), -1);
  for (int v = 0; v < g.n(); ++v)
    if (g.is_switch(v) && g.degree(v) > 0) {
      source_of[v] = static_cast<int>(net.supply.size());
      net.supply.push_back(1);
    }
  std::vector<int> nf(faces.count(), 0);
  for (const Angle& a : ang) nf[a.face] += !a.flat;
  for (int f = 0; f < faces.count(); ++f) {
    if (nf[f] % 2) throw OddSwitchCount("face " + std::to_string(f));
    int d = f == faces.outer ? nf[f] / 2 + 1 : nf[f] / 2 - 1;
    if (d < 0) return std::nullopt;
    net.demand.push_back(d);
  }
  std::map<std::pair<int, int>, int> first_angle;  // (vertex, face) -> dart
  for (int d = 0; d < static_cast<int>(ang.size()); ++d) {
    const Angle& a = ang[d];
    if (a.flat) continue;
    lambda[d] = -1;
    if (source_of[a.vertex] < 0) continue;
    if (first_angle.emplace(std::make_pair(a.vertex, a.face), d).second)
      net.arcs.push_back({source_of[a.vertex], a.face, 1});
  }
  int total_demand = 0;
  for (int d : net.demand) total_demand += d;
  int total_supply = static_cast<int>(net.supply.size());
  if (total_demand != total_supply) return std::nullopt;
  FlowResult fr = max_flow(net);
  if (fr.value != total_demand) return std::nullopt;

  std::vector<int> vertex_of_source(total_supply);
  for (int v = 0; v < g.n(); ++v)
    if (source_of[v] >= 0) vertex_of_source[source_of[v]] = v;
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    if (fr.arc_flow[i] == 0) continue;
    int v = vertex_of_source[net.arcs[i].source];
    lambda[first_angle.at({v, net.arcs[i].sink})] = 1;
  }
  assert(check_up_conditions(g, emb, lambda));
  return lambda;
}

}  // namespace upt
