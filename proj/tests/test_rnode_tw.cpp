// SPDX-License-Identifier: MIT
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle_rnode.hpp"
#include "upt/rnode_flow.hpp"
#include "upt/rnode_tw.hpp"

using namespace upt;
using upt::testing::oracle_node_set;
using upt::testing::oracle_rnode;
using upt::testing::planar_blocks;
using upt::testing::small_corpus;
using TdKind = NiceTreeDecomposition::Kind;

namespace {

PlanarEmbedding embed(const std::vector<std::pair<int, int>>& edges, int n) {
  PlanarEmbedding emb;
  emb.n = n;
  emb.ends = edges;
  emb.rotation = *planar_rotation(n, edges);
  emb.outer_dart = 0;
  return emb;
}

// Calls f on every R-node of the planar corpus blocks, children computed by
// exhaustive search.
void for_each_rnode(int count, TauPolicy policy, const std::function<void(const RNodeContext&)>& f) {
  for (const Digraph& g : planar_blocks(small_corpus(count, corpus_seed())))
    for (int root = 0; root < g.m(); ++root) {
      BiconnectedOptions opt;
      opt.early_exit = false;
      opt.policy = policy;
      BiconnectedResult res;
      try {
        res = biconnected_feasible(g, root, oracle_rnode(), opt);
      } catch (const NonPlanarSkeleton&) {
        continue;
      }
      for (int x = 0; x < res.tree.size(); ++x) {
        if (res.tree.node(x).kind != NodeKind::R || !res.computed[x]) continue;
        f(RNodeContext{g, res.tree, x, res.sets, res.info, tau_range(policy, res.info[x])});
      }
    }
}

// Exact treewidth by trying every elimination order.
int brute_treewidth(const AdjacencyList& adj) {
  std::vector<int> order(adj.size());
  std::iota(order.begin(), order.end(), 0);
  int best = static_cast<int>(adj.size());
  do best = std::min(best, order_width(adj, order));
  while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

TEST_CASE("embedding graph sizes") {
  const PlanarEmbedding tri = embed({{0, 1}, {1, 2}, {2, 0}}, 3);
  EmbeddingGraph g = embedding_graph(tri);
  CHECK(g.size() == 8);
  CHECK(g.edge_total() == 18);
  CHECK(g.kind(0) == EmbeddingGraph::Kind::True);
  CHECK(g.kind(g.edge_vertex(2)) == EmbeddingGraph::Kind::Edge);
  CHECK(g.kind(g.outer) == EmbeddingGraph::Kind::Face);
  augment_around(g, tri, {0, 1, 2});
  CHECK(g.edge_total() == 21);

  const PlanarEmbedding k4 = embed({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, 4);
  const EmbeddingGraph h = embedding_graph(k4);
  CHECK(h.size() == 14);
  CHECK(h.edge_total() == 12 + 4 * 6);
}

TEST_CASE("decomposition checker") {
  AdjacencyList path = {{1}, {0, 2}, {1}};
  NiceTreeDecomposition td;
  auto add = [&](TdKind k, std::vector<int> bag, int v, std::vector<int> kids) {
    td.nodes.push_back({k, bag, v, kids});
    return static_cast<int>(td.nodes.size()) - 1;
  };
  int x = add(TdKind::Leaf, {}, -1, {});
  x = add(TdKind::Introduce, {0}, 0, {x});
  x = add(TdKind::Introduce, {0, 1}, 1, {x});
  x = add(TdKind::Forget, {1}, 0, {x});
  x = add(TdKind::Introduce, {1, 2}, 2, {x});
  x = add(TdKind::Forget, {2}, 1, {x});
  td.root = add(TdKind::Forget, {}, 2, {x});
  CHECK(check_decomposition(path, td) == "");
  CHECK(td.width() == 1);

  // An edge whose endpoints share no bag.
  AdjacencyList cycle = {{1, 2}, {0, 2}, {1, 0}};
  CHECK(check_decomposition(cycle, td) == "edge 0-2 in no bag");

  // A vertex whose bags are not connected.
  NiceTreeDecomposition split = td;
  split.nodes[4] = {TdKind::Introduce, {0, 1}, 0, {3}};
  split.nodes[5] = {TdKind::Forget, {0}, 1, {4}};
  split.nodes[6] = {TdKind::Forget, {}, 0, {5}};
  CHECK(check_decomposition({{1}, {0}, {}}, split).find("not connected") != std::string::npos);

  NiceTreeDecomposition broken = td;
  broken.nodes[2].bag = {1};
  CHECK(check_decomposition(path, broken) != "");
  CHECK(check_decomposition(path, td, 1) == "keep vertex missing from a bag");
}

TEST_CASE("nice decompositions keep the outer face vertex in every bag") {
  const PlanarEmbedding k4 = embed({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, 4);
  const EmbeddingGraph g = embedding_graph(k4);
  const NiceTreeDecomposition td = tree_decomposition(g.adj, g.outer);
  CHECK(check_decomposition(g.adj, td, g.outer) == "");
  const NiceTreeDecomposition one = single_bag_decomposition(g.size(), g.outer);
  CHECK(check_decomposition(g.adj, one, g.outer) == "");
  CHECK(one.width() == g.size() - 1);
  CHECK(td.width() < one.width());
  CHECK(check_decomposition(g.adj, tree_decomposition(g.adj)) == "");
}

TEST_CASE("exact improvement reaches the treewidth of small graphs") {
  std::mt19937 rng(11);
  for (int it = 0; it < 60; ++it) {
    const int n = 4 + static_cast<int>(rng() % 5);
    AdjacencyList adj(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 100 < 45) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
    const auto fill = min_fill_order(adj);
    const auto best = improve_order(adj, fill);
    CHECK(order_width(adj, best) == brute_treewidth(adj));
    CHECK(order_width(adj, best) <= order_width(adj, fill));
    std::vector<int> sorted = best;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    CHECK(sorted == all);
    CHECK(check_decomposition(adj, nice_decomposition(adj, best, 0), 0) == "");
  }
}

TEST_CASE("valid pairs: decomposition independence and the standalone validator") {
  int compared = 0, joins = 0, single = 0, mutated = 0;
  for_each_rnode(60, TauPolicy::Safe, [&](const RNodeContext& ctx) {
    if (compared >= 120) return;
    for (int flip = 0; flip < 2; ++flip) {
      const TwInstance inst = tw_instance(ctx, flip);
      const NiceTreeDecomposition td = tree_decomposition(inst.graph.adj, inst.graph.outer);
      REQUIRE(check_decomposition(inst.graph.adj, td, inst.graph.outer) == "");
      for (const auto& node : td.nodes) joins += node.kind == TdKind::Join;
      double product = 1;
      for (const auto& s : inst.sets) product *= static_cast<double>(s.size());
      const bool small = inst.graph.size() <= 12 && product <= 2e4;
      const NiceTreeDecomposition one = single_bag_decomposition(inst.graph.size(), inst.graph.outer);
      const FeasibleSet all = r_node_treewidth(ctx);
      for (const Shape& s : all.shapes()) {
        const auto pair = valid_pair_dp(inst, td, s);
        if (small) {
          CHECK(valid_pair_dp(inst, one, s).has_value() == pair.has_value());
          ++single;
        }
        if (!pair) continue;
        CHECK(check_valid_pair(inst, s, *pair) == "");
        // Moving a large angle into another face breaks two face sums.
        ValidPair moved = *pair;
        for (int w = 0; w < inst.h.n; ++w) {
          if (!moved.alpha[w] || moved.alpha[w]->in_edge) continue;
          for (int d = 0; d < 2 * inst.h.m(); ++d)
            if (inst.h.head(d) == w && inst.faces.face_of_dart[d] != moved.alpha[w]->id) {
              moved.alpha[w]->id = inst.faces.face_of_dart[d];
              CHECK(check_valid_pair(inst, s, moved) != "");
              ++mutated;
              break;
            }
          break;
        }
        Shape off = s;
        off.tl += 2;
        off.tr -= 2;
        CHECK(check_valid_pair(inst, off, *pair) == "outer path turns");
      }
      ++compared;
    }
  });
  CHECK(compared >= 100);
  CHECK(joins > 0);
  CHECK(single > 0);
  CHECK(mutated > 0);
}

TEST_CASE("shapes rejected by the dynamic program have no valid pair") {
  int rejected = 0;
  for_each_rnode(40, TauPolicy::Safe, [&](const RNodeContext& ctx) {
    if (rejected >= 200) return;
    const FeasibleSet all = r_node_treewidth(ctx);
    const FeasibleSet oracle = oracle_node_set(ctx.g, ctx.tree, ctx.node, ctx.range);
    CHECK(all == oracle);
    const TwInstance inst = tw_instance(ctx, 0);
    const NiceTreeDecomposition td = tree_decomposition(inst.graph.adj, inst.graph.outer);
    for (int tl = ctx.range.lo; tl <= ctx.range.hi; ++tl)
      for (int lu : {-1, 0, 1})
        for (int lv : {-1, 0, 1}) {
          Shape s{tl, 2 - tl - lu - lv, lu, lv, Rho::Out, Rho::Out, Rho::Out, Rho::Out};
          if (lu == 0) s.rru = Rho::In;
          if (lv == 0) s.rrv = Rho::In;
          if (!is_coherent(s) || !ctx.range.admits(s) || all.contains(s)) continue;
          CHECK_FALSE(valid_pair_dp(inst, td, s).has_value());
          ++rejected;
        }
  });
  CHECK(rejected > 50);
}

TEST_CASE("treewidth and flow backends agree on every corpus R-node") {
  int compared = 0, nonempty = 0;
  for (TauPolicy policy : {TauPolicy::Safe, TauPolicy::Sources})
    for_each_rnode(500, policy, [&](const RNodeContext& ctx) {
      const FeasibleSet got = r_node_treewidth(ctx);
      CHECK(got == r_node_sources(ctx));
      for (const Shape& s : got.shapes()) {
        auto children = r_node_treewidth_realize(ctx, s);
        REQUIRE(children);
        const Skeleton& sk = ctx.tree.node(ctx.node).skeleton;
        for (size_t e = 0; e < sk.ends.size(); ++e)
          if (sk.edge_child[e] >= 0) CHECK(ctx.sets[sk.edge_child[e]].contains((*children)[e]));
      }
      ++compared;
      nonempty += !got.empty();
    });
  CHECK(compared > 1000);
  CHECK(nonempty > 500);
}

TEST_CASE("record counts are traced per node") {
  bool done = false;
  for_each_rnode(20, TauPolicy::Safe, [&](const RNodeContext& ctx) {
    if (done) return;
    std::ostringstream out;
    r_node_treewidth(ctx, &out);
    CHECK(out.str().find("records=") != std::string::npos);
    CHECK(out.str().find("join") != std::string::npos);
    done = true;
  });
  CHECK(done);
}

TEST_CASE("decision with the treewidth backend agrees with exhaustive search") {
  for (const auto& inst : small_corpus(200, corpus_seed())) {
    Verdict v = decide_upward_planar(inst.graph, treewidth_subprocedure());
    CHECK_MESSAGE(v.upward == brute_force_upward_planar(inst.graph).upward, inst.name);
  }
}
