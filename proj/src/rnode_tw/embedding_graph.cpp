// SPDX-License-Identifier: MIT
#include <algorithm>
#include <stdexcept>

#include "upt/rnode_tw.hpp"
#include "upt/spqr.hpp"

namespace upt {

int EmbeddingGraph::edge_total() const {
  std::size_t t = 0;
  for (const auto& a : adj) t += a.size();
  return static_cast<int>(t / 2);
}

EmbeddingGraph::Kind EmbeddingGraph::kind(int x) const {
  if (x < true_count) return Kind::True;
  if (x < true_count + edge_count) return Kind::Edge;
  return Kind::Face;
}

bool EmbeddingGraph::adjacent(int a, int b) const {
  return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

namespace {

void link(AdjacencyList& adj, int a, int b) {
  if (a == b || std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) return;
  adj[a].push_back(b);
  adj[b].push_back(a);
}

void sort_all(AdjacencyList& adj) {
  for (auto& a : adj) std::sort(a.begin(), a.end());
}

}  // namespace

EmbeddingGraph embedding_graph(const PlanarEmbedding& emb) {
  const Faces faces = trace_faces(emb);
  EmbeddingGraph g;
  g.true_count = emb.n;
  g.edge_count = emb.m();
  g.face_count = faces.count();
  g.adj.resize(g.true_count + g.edge_count + g.face_count);
  for (int e = 0; e < emb.m(); ++e) {
    link(g.adj, emb.ends[e].first, g.edge_vertex(e));
    link(g.adj, emb.ends[e].second, g.edge_vertex(e));
  }
  for (int f = 0; f < faces.count(); ++f)
    for (int d : faces.walks[f]) {
      link(g.adj, g.face_vertex(f), emb.head(d));
      link(g.adj, g.face_vertex(f), g.edge_vertex(d >> 1));
    }
  g.outer = faces.outer >= 0 ? g.face_vertex(faces.outer) : -1;
  sort_all(g.adj);
  return g;
}

void augment_around(EmbeddingGraph& g, const PlanarEmbedding& emb,
                    const std::vector<int>& vertices) {
  for (int w : vertices) {
    const auto& rot = emb.rotation[w];
    const int k = static_cast<int>(rot.size());
    for (int i = 0; i < k; ++i) link(g.adj, g.edge_vertex(rot[i]), g.edge_vertex(rot[(i + 1) % k]));
  }
  sort_all(g.adj);
}

TwInstance tw_instance(const RNodeContext& ctx, int flip, int zeta) {
  const SpqrNode& node = ctx.tree.node(ctx.node);
  const Skeleton& sk = node.skeleton;
  const PlanarEmbedding full = flips(ctx.tree, ctx.node)[flip];
  const Faces full_faces = trace_faces(full);
  const int p = sk.parent_edge();
  const int left = full_faces.face_of_dart[2 * p + 1], right = full_faces.face_of_dart[2 * p];

  TwInstance inst;
  inst.u = sk.local(node.u);
  inst.v = sk.local(node.v);
  std::vector<int> to_h(full.m(), -1);
  for (int e = 0; e < full.m(); ++e) {
    if (e == p) continue;
    to_h[e] = static_cast<int>(inst.skeleton_edge.size());
    inst.skeleton_edge.push_back(e);
  }
  PlanarEmbedding& h = inst.h;
  h.n = full.n;
  for (int e : inst.skeleton_edge) h.ends.push_back(full.ends[e]);
  h.rotation.resize(h.n);
  for (int w = 0; w < h.n; ++w)
    for (int e : full.rotation[w])
      if (e != p) h.rotation[w].push_back(to_h[e]);
  const int start = full.next(2 * p);
  h.outer_dart = 2 * to_h[start >> 1] + (start & 1);
  inst.faces = trace_faces(h);

  const int m = h.m();
  inst.left_edge.assign(m, 0);
  inst.right_edge.assign(m, 0);
  inst.left_vertex.assign(h.n, 0);
  inst.right_vertex.assign(h.n, 0);
  for (int d = 0; d < 2 * full.m(); ++d) {
    if ((d >> 1) == p) continue;
    const int f = full_faces.face_of_dart[d];
    const int w = full.head(d);
    const bool inner = w != inst.u && w != inst.v;
    if (f == left) {
      inst.left_edge[to_h[d >> 1]] = 1;
      if (inner) inst.left_vertex[w] = 1;
    } else if (f == right) {
      inst.right_edge[to_h[d >> 1]] = 1;
      if (inner) inst.right_vertex[w] = 1;
    }
  }

  std::vector<int> nonswitch;
  for (int w = 0; w < h.n; ++w) {
    inst.names.push_back(ctx.g.name(sk.vertices[w]));
    bool sw = ctx.g.is_switch(sk.vertices[w]);
    if (w == inst.u) sw = ctx.info[ctx.node].u_switch;
    if (w == inst.v) sw = ctx.info[ctx.node].v_switch;
    inst.is_switch.push_back(sw);
    if (!sw) nonswitch.push_back(w);
  }
  for (int e : inst.skeleton_edge) {
    const int c = sk.edge_child[e];
    const SpqrNode& child = ctx.tree.node(c);
    if (child.u != sk.vertices[full.ends[e].first])
      throw std::logic_error("skeleton edge not oriented by its child poles");
    inst.child_switch.push_back({ctx.info[c].u_switch, ctx.info[c].v_switch});
    inst.sets.push_back(ctx.sets[c].shapes());
  }
  inst.zeta = zeta > 0 ? zeta : ctx.info[ctx.node].vertices;
  inst.graph = embedding_graph(h);
  augment_around(inst.graph, h, nonswitch);
  return inst;
}

}  // namespace upt
