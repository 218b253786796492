// SPDX-License-Identifier: MIT
#include "upt/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

// The oracle keeps its own face walker and angle bookkeeping so that it never
// shares code paths with the embedding module it is used to check.

namespace upt {

namespace {

struct Local {
  int n = 0;
  int m = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> rot;  // clockwise edges per vertex
  std::vector<int> next;              // per dart
  std::vector<int> face_of;           // per dart
  std::vector<std::vector<int>> faces;
  std::vector<char> flat;             // angle after dart

  int head(int d) const { return d & 1 ? edges[d >> 1].tail : edges[d >> 1].head; }
  int tail(int d) const { return d & 1 ? edges[d >> 1].head : edges[d >> 1].tail; }
  int leaving(int e, int v) const { return edges[e].tail == v ? 2 * e : 2 * e + 1; }
  int arriving(int e, int v) const { return edges[e].head == v ? 2 * e : 2 * e + 1; }

  void build_next() {
    next.assign(2 * m, -1);
    for (int b = 0; b < n; ++b) {
      const auto& r = rot[b];
      for (size_t i = 0; i < r.size(); ++i)
        next[arriving(r[i], b)] = leaving(r[(i + 1) % r.size()], b);
    }
  }

  int count_faces() const {
    std::vector<char> seen(2 * m, 0);
    int f = 0;
    for (int d0 = 0; d0 < 2 * m; ++d0) {
      if (seen[d0]) continue;
      ++f;
      for (int d = d0; !seen[d]; d = next[d]) seen[d] = 1;
    }
    return m == 0 ? 1 : f;
  }

  void build_faces() {
    face_of.assign(2 * m, -1);
    faces.clear();
    for (int d0 = 0; d0 < 2 * m; ++d0) {
      if (face_of[d0] >= 0) continue;
      std::vector<int> walk;
      for (int d = d0; face_of[d] < 0; d = next[d]) {
        face_of[d] = static_cast<int>(faces.size());
        walk.push_back(d);
      }
      faces.push_back(std::move(walk));
    }
    flat.assign(2 * m, 0);
    for (int d = 0; d < 2 * m; ++d) {
      int v = head(d);
      bool in1 = edges[d >> 1].head == v;
      bool in2 = edges[next[d] >> 1].head == v;
      flat[d] = in1 != in2;
    }
  }
};

Local from_digraph(const Digraph& g) {
  Local L;
  L.n = g.n();
  L.m = g.m();
  L.edges = g.edges();
  L.rot.assign(g.n(), {});
  return L;
}

Local from_embedding(const Digraph& g, const PlanarEmbedding& emb) {
  Local L = from_digraph(g);
  L.rot = emb.rotation;
  L.build_next();
  L.build_faces();
  return L;
}

// Backtracking over the large angle of every switch vertex for one outer face.
class AngleSearch {
public:
  AngleSearch(const Digraph& g, const Local& L, int outer) : g_(g), L_(L), outer_(outer) {}

  // Prepares demands; false when no assignment can exist.
  bool setup() {
    const int nf = static_cast<int>(L_.faces.size());
    std::vector<int> flats(L_.n, 0), nsw(nf, 0);
    for (int d = 0; d < 2 * L_.m; ++d) {
      if (L_.flat[d]) ++flats[L_.head(d)];
      else ++nsw[L_.face_of[d]];
    }
    for (int v = 0; v < L_.n; ++v)
      if (!g_.is_switch(v) && flats[v] != 2) return false;
    need_.assign(nf, 0);
    int total = 0;
    for (int f = 0; f < nf; ++f) {
      if (nsw[f] % 2) return false;
      need_[f] = f == outer_ ? nsw[f] / 2 + 1 : nsw[f] / 2 - 1;
      if (need_[f] < 0) return false;
      total += need_[f];
    }
    options_.assign(L_.n, {});
    faces_at_.assign(L_.n, {});
    for (int d = 0; d < 2 * L_.m; ++d) {
      int v = L_.head(d);
      if (g_.is_switch(v)) {
        options_[v].push_back(d);
        faces_at_[v].push_back(L_.face_of[d]);
      }
    }
    order_.clear();
    for (int v = 0; v < L_.n; ++v) {
      if (!g_.is_switch(v) || g_.degree(v) == 0) continue;
      order_.push_back(v);
      auto& fa = faces_at_[v];
      std::sort(fa.begin(), fa.end());
      fa.erase(std::unique(fa.begin(), fa.end()), fa.end());
    }
    if (total != static_cast<int>(order_.size())) return false;
    cnt_.assign(nf, 0);
    rem_.assign(nf, 0);
    for (int v : order_)
      for (int f : faces_at_[v]) ++rem_[f];
    chosen_.assign(L_.n, -1);
    return true;
  }

  // Moves the vertices touching the outer face to the front of the order.
  int outer_first() {
    std::stable_partition(order_.begin(), order_.end(), [&](int v) {
      return std::binary_search(faces_at_[v].begin(), faces_at_[v].end(), outer_);
    });
    int k = 0;
    for (int v : order_)
      if (std::binary_search(faces_at_[v].begin(), faces_at_[v].end(), outer_)) ++k;
    return k;
  }

  // Depth-first search; visit(depth) is called when depth vertices are
  // assigned and returns 0 to continue, 1 to prune this branch, 2 to stop.
  template <class Visit>
  int dfs(size_t depth, Visit& visit) {
    int r = visit(depth);
    if (r) return r;
    if (depth == order_.size()) return 0;
    int v = order_[depth];
    for (int f : faces_at_[v]) --rem_[f];
    int result = 0;
    for (int d : options_[v]) {
      int f = L_.face_of[d];
      if (cnt_[f] >= need_[f]) continue;
      ++cnt_[f];
      bool ok = true;
      for (int h : faces_at_[v])
        if (need_[h] - cnt_[h] > rem_[h]) ok = false;
      if (ok) {
        chosen_[v] = d;
        int r2 = dfs(depth + 1, visit);
        chosen_[v] = -1;
        if (r2 == 2) {
          --cnt_[f];
          result = 2;
          break;
        }
      }
      --cnt_[f];
    }
    for (int f : faces_at_[v]) ++rem_[f];
    return result;
  }

  bool complete(size_t depth) const {
    if (depth != order_.size()) return false;
    for (size_t f = 0; f < need_.size(); ++f)
      if (cnt_[f] != need_[f]) return false;
    return true;
  }

  AngleAssignment labels() const {
    AngleAssignment lam(2 * L_.m, 0);
    for (int d = 0; d < 2 * L_.m; ++d) lam[d] = L_.flat[d] ? 0 : -1;
    for (int v : order_)
      if (chosen_[v] >= 0) lam[chosen_[v]] = 1;
    return lam;
  }

  size_t size() const { return order_.size(); }

private:
  const Digraph& g_;
  const Local& L_;
  int outer_;
  std::vector<int> need_, cnt_, rem_, chosen_, order_;
  std::vector<std::vector<int>> options_, faces_at_;
};

// Enumerates planar rotation systems; fn(L) returns false to stop.
template <class Fn>
void for_each_rotation(const Digraph& g, int guard, Fn&& fn) {
  if (g.m() > guard)
    throw TooLarge(std::to_string(g.m()) + " edges exceed the guard of " + std::to_string(guard));
  Local L = from_digraph(g);
  std::vector<std::vector<std::vector<int>>> perms(g.n());
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> inc;
    for (int e : g.out_edges(v)) inc.push_back(e);
    for (int e : g.in_edges(v)) inc.push_back(e);
    std::sort(inc.begin(), inc.end());
    if (inc.size() <= 1) {
      perms[v].push_back(inc);
      continue;
    }
    std::vector<int> rest(inc.begin() + 1, inc.end());
    do {
      std::vector<int> r{inc[0]};
      r.insert(r.end(), rest.begin(), rest.end());
      perms[v].push_back(r);
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  std::vector<size_t> idx(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) L.rot[v] = perms[v][0];
  while (true) {
    L.build_next();
    if (g.n() - g.m() + L.count_faces() == 2) {
      L.build_faces();
      if (!fn(L)) return;
    }
    int v = 0;
    for (; v < g.n(); ++v) {
      if (++idx[v] < perms[v].size()) {
        L.rot[v] = perms[v][idx[v]];
        break;
      }
      idx[v] = 0;
      L.rot[v] = perms[v][0];
    }
    if (v == g.n()) return;
  }
}

PlanarEmbedding to_embedding(const Local& L, int outer) {
  PlanarEmbedding emb;
  emb.n = L.n;
  for (const Edge& e : L.edges) emb.ends.emplace_back(e.tail, e.head);
  emb.rotation = L.rot;
  emb.outer_dart = L.m > 0 ? L.faces[outer].front() : -1;
  return emb;
}

std::optional<Shape> local_shape(const Local& L, const AngleAssignment& lam, int outer, int u,
                                 int v) {
  const auto& walk = L.faces[outer];
  const int k = static_cast<int>(walk.size());
  int start = -1, count_u = 0, count_v = 0;
  for (int i = 0; i < k; ++i) {
    if (L.tail(walk[i]) == u) {
      start = i;
      ++count_u;
    }
    if (L.tail(walk[i]) == v) ++count_v;
  }
  if (count_u != 1 || count_v != 1) return std::nullopt;
  auto rho_at = [&](int d, int w) { return L.edges[d >> 1].tail == w ? Rho::Out : Rho::In; };
  Shape s;
  s.tl = s.tr = 0;
  int i = start;
  s.rlu = rho_at(walk[i], u);
  while (L.head(walk[i]) != v) {
    s.tl += lam[walk[i]];
    i = (i + 1) % k;
  }
  s.rlv = rho_at(walk[i], v);
  s.lv = lam[walk[i]];
  i = (i + 1) % k;
  s.rrv = rho_at(walk[i], v);
  while (L.head(walk[i]) != u) {
    s.tr += lam[walk[i]];
    i = (i + 1) % k;
  }
  s.rru = rho_at(walk[i], u);
  s.lu = lam[walk[i]];
  return s;
}

}  // namespace

void for_each_embedding(const Digraph& g, const std::function<bool(const PlanarEmbedding&)>& fn,
                        int guard) {
  for_each_rotation(g, guard, [&](const Local& L) {
    int nf = L.m == 0 ? 1 : static_cast<int>(L.faces.size());
    for (int f = 0; f < nf; ++f)
      if (!fn(to_embedding(L, f))) return false;
    return true;
  });
}

std::vector<PlanarEmbedding> enumerate_embeddings(const Digraph& g, int guard) {
  std::vector<PlanarEmbedding> out;
  for_each_embedding(g, [&](const PlanarEmbedding& e) {
    out.push_back(e);
    return true;
  }, guard);
  return out;
}

std::optional<AngleAssignment> exhaustive_fixed_test(const Digraph& g, const PlanarEmbedding& emb) {
  Local L = from_embedding(g, emb);
  // Locate the outer face through the designated dart.
  int outer = emb.outer_dart >= 0 ? L.face_of[emb.outer_dart] : 0;
  if (L.m == 0) return AngleAssignment{};
  AngleSearch s(g, L, outer);
  if (!s.setup()) return std::nullopt;
  std::optional<AngleAssignment> found;
  auto visit = [&](size_t depth) {
    if (s.complete(depth)) {
      found = s.labels();
      return 2;
    }
    return 0;
  };
  s.dfs(0, visit);
  return found;
}

OracleVerdict brute_force_upward_planar(const Digraph& g, int guard) {
  OracleVerdict out;
  if (g.m() == 0) {
    out.upward = true;
    return out;
  }
  for_each_rotation(g, guard, [&](const Local& L) {
    for (int f = 0; f < static_cast<int>(L.faces.size()); ++f) {
      AngleSearch s(g, L, f);
      if (!s.setup()) continue;
      bool hit = false;
      auto visit = [&](size_t depth) {
        if (s.complete(depth)) {
          hit = true;
          out.assignment = s.labels();
          return 2;
        }
        return 0;
      };
      s.dfs(0, visit);
      if (hit) {
        out.upward = true;
        out.embedding = to_embedding(L, f);
        return false;
      }
    }
    return true;
  });
  return out;
}

std::vector<Shape> brute_force_feasible_set(const Digraph& g, int u, int v, int guard) {
  std::set<Shape> found;
  for_each_rotation(g, guard, [&](const Local& L) {
    for (int f = 0; f < static_cast<int>(L.faces.size()); ++f) {
      bool has_u = false, has_v = false;
      for (int d : L.faces[f]) {
        has_u |= L.tail(d) == u;
        has_v |= L.tail(d) == v;
      }
      if (!has_u || !has_v) continue;
      AngleSearch s(g, L, f);
      if (!s.setup()) continue;
      const size_t k = static_cast<size_t>(s.outer_first());
      // Phase one fixes every outer label; phase two only checks that the
      // remaining vertices can be completed.
      std::optional<Shape> current;
      bool completed = false;
      auto visit = [&](size_t depth) -> int {
        if (depth < k) return 0;
        if (depth == k) {
          current = local_shape(L, s.labels(), f, u, v);
          if (!current || found.count(*current)) return 1;
          completed = false;
        }
        if (completed) return 1;
        if (s.complete(depth)) {
          found.insert(*current);
          completed = true;
          return 1;
        }
        return 0;
      };
      s.dfs(0, visit);
    }
    return true;
  });
  return {found.begin(), found.end()};
}

std::optional<Shape> shape_of(const Digraph& g, const PlanarEmbedding& emb,
                              const AngleAssignment& lambda, int u, int v) {
  Local L = from_embedding(g, emb);
  if (L.m == 0) return std::nullopt;
  return local_shape(L, lambda, L.face_of[emb.outer_dart], u, v);
}

}  // namespace upt
