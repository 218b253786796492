// SPDX-License-Identifier: MIT
#pragma once

#include "upt/corpus.hpp"
#include "upt/framework.hpp"
#include "upt/oracle.hpp"

namespace upt::testing {

// R-node step answered by exhaustive search on the pertinent graph.
inline RNodeSubprocedure oracle_rnode() {
  RNodeSubprocedure sub;
  sub.name = "oracle";
  sub.feasible = [](const RNodeContext& ctx) {
    Pertinent p = pertinent(ctx.g, ctx.tree, ctx.node);
    FeasibleSet f = ctx.range.empty_set();
    for (const Shape& s : brute_force_feasible_set(p.graph, p.u, p.v))
      if (ctx.range.admits(s)) f.insert(s);
    return f;
  };
  return sub;
}

// Oracle feasible set of a node's pertinent graph restricted to a range.
inline FeasibleSet oracle_node_set(const Digraph& g, const SpqrTree& t, int node, TauRange r) {
  Pertinent p = pertinent(g, t, node);
  FeasibleSet f = r.empty_set();
  for (const Shape& s : brute_force_feasible_set(p.graph, p.u, p.v))
    if (r.admits(s)) f.insert(s);
  return f;
}

// Instances whose expansion stays within the exhaustive search guard.
inline std::vector<CorpusInstance> small_corpus(int random, std::uint64_t seed) {
  auto corpus = exhaustive_corpus(5);
  for (auto& inst : random_corpus(random, seed))
    if (expand(inst.graph).digraph.m() <= kOracleEdgeGuard) corpus.push_back(std::move(inst));
  return corpus;
}

inline std::vector<Digraph> planar_blocks(const std::vector<CorpusInstance>& corpus) {
  std::vector<Digraph> out;
  for (const auto& inst : corpus) {
    Digraph x = expand(inst.graph).digraph;
    for (const auto& b : block_cut_tree(x).blocks)
      if (b.edges.size() >= 2) out.push_back(edge_subgraph(x, b.edges));
  }
  return out;
}

}  // namespace upt::testing
