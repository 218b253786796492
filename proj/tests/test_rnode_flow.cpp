// SPDX-License-Identifier: MIT
#include <set>

#include "demand_example.hpp"
#include "doctest.h"
#include "oracle_rnode.hpp"
#include "upt/rnode_flow.hpp"

using namespace upt;
using upt::testing::oracle_node_set;
using upt::testing::oracle_rnode;
using upt::testing::planar_blocks;
using upt::testing::small_corpus;

namespace {

using K = NetworkSpec::Kind;

// K4 on s, a, b, t with parent edge s->t; every child is a single edge.
struct K4 {
  Digraph g = validate_dag({{"s", "a"}, {"s", "b"}, {"a", "b"}, {"a", "t"}, {"b", "t"}, {"s", "t"}});
  BiconnectedResult res;
  int r = -1;
  K4() {
    BiconnectedOptions opt;
    opt.early_exit = false;
    res = biconnected_feasible(g, *g.find_edge(g.id("s"), g.id("t")), oracle_rnode(), opt);
    for (int x = 0; x < res.tree.size(); ++x)
      if (res.tree.node(x).kind == NodeKind::R) r = x;
  }
  RNodeContext ctx() const {
    return {g, res.tree, r, res.sets, res.info, tau_range(TauPolicy::Safe, res.info[r])};
  }
};

std::vector<std::optional<Shape>> chosen_for(const RNodeView& v, const RNodeContext& ctx) {
  std::vector<std::optional<Shape>> out(v.emb.m());
  for (int e = 0; e < v.emb.m(); ++e)
    if (v.enumerated(e)) out[e] = ctx.sets[ctx.tree.node(ctx.node).skeleton.edge_child[e]].shapes()[0];
  return out;
}

}  // namespace

TEST_CASE("turn range") {
  CHECK(turn_range(0) == std::pair{-1, 1});
  CHECK(turn_range(1) == std::pair{-3, 3});
  CHECK(turn_range(3) == std::pair{-7, 7});
}

TEST_CASE("K4 components") {
  K4 k;
  REQUIRE(k.r >= 0);
  for (int flip = 0; flip < 2; ++flip) {
    RNodeView v = make_view(k.ctx(), flip);
    int extreme = 0, interesting = 0;
    for (int e = 0; e < v.emb.m(); ++e) {
      if (e == v.parent) continue;
      extreme += v.classes[e].extreme;
      interesting += v.classes[e].interesting;
    }
    CHECK(extreme == 4);
    CHECK(interesting == 0);
    // The edge a-b avoids both poles.
    for (int e = 0; e < v.emb.m(); ++e) {
      auto [x, y] = v.emb.ends[e];
      if (x != v.u && x != v.v && y != v.u && y != v.v) CHECK_FALSE(v.classes[e].extreme);
    }
    auto order = component_order(v.classes);
    for (int i = 0; i < 4; ++i) CHECK(v.classes[order[i]].extreme);
  }
}

TEST_CASE("prechecks") {
  K4 k;
  RNodeView v = make_view(k.ctx(), 0);
  auto chosen = chosen_for(v, k.ctx());
  FeasibleSet f = r_node_sources(k.ctx());
  REQUIRE_FALSE(f.empty());
  int mismatched = 0;
  for (const Shape& s : f.shapes()) {
    // Only the flip realizing s passes; try both.
    bool pass = precheck(v, s, chosen).pass || precheck(make_view(k.ctx(), 1), s, chosen).pass;
    CHECK(pass);
    // The left boundary label at u no longer matches the extreme component.
    Shape bad = s;
    bad.rlu = flip(bad.rlu);
    bad.lu = bad.rlu == bad.rru ? 1 : 0;
    bad.tl = 2 - bad.tr - bad.lu - bad.lv;
    if (!is_coherent(bad)) continue;
    ++mismatched;
    for (int fl = 0; fl < 2; ++fl) {
      Precheck p = precheck(make_view(k.ctx(), fl), bad, chosen);
      CHECK_FALSE(p.pass);
      if (fl == 0) CHECK(p.failed == "extreme-edge");
    }
  }
  CHECK(mismatched > 0);
  // Two internal large angles at one switch vertex.
  RNodeView w = make_view(k.ctx(), 0);
  const int s_vertex = w.u;
  auto heavy = chosen;
  int placed = 0;
  for (int e = 0; e < w.emb.m() && placed < 2; ++e) {
    if (e == w.parent || !w.enumerated(e)) continue;
    const int end = w.end_of(e, s_vertex);
    if (w.emb.ends[e].first != s_vertex && w.emb.ends[e].second != s_vertex) continue;
    Shape x = *heavy[e];
    (end == 0 ? x.lu : x.lv) = -1;
    heavy[e] = x;
    ++placed;
  }
  REQUIRE(placed == 2);
  Shape s = *f.shapes().begin();
  Precheck p = precheck(w, s, heavy);
  CHECK_FALSE(p.pass);
  if (is_coherent(s)) CHECK(p.failed != "coherence");
}

TEST_CASE("a single-edge K4 network needs only switch vertex units") {
  K4 k;
  FeasibleSet f = r_node_sources(k.ctx());
  bool built = false;
  for (int flip = 0; flip < 2; ++flip) {
    RNodeView v = make_view(k.ctx(), flip);
    auto chosen = chosen_for(v, k.ctx());
    for (const Shape& s : f.shapes()) {
      Precheck p = precheck(v, s, chosen);
      if (!p.pass) continue;
      NetworkSpec n = build_network(v, s, chosen, p);
      for (K kind : n.source_kind) CHECK(kind == K::SwitchVertex);
      int faces = 0;
      for (size_t i = 0; i < n.sink_kind.size(); ++i)
        if (n.sink_kind[i] == K::Face || n.sink_kind[i] == K::TurnLeft ||
            n.sink_kind[i] == K::TurnRight)
          ++faces;
      CHECK(faces == v.faces.count());
      CHECK(n.total_demand() <= n.total_supply());
      built = true;
    }
  }
  CHECK(built);
}

TEST_CASE("hand-built configuration reproduces its demands") {
  auto ex = upt::testing::demand_example();
  const auto& f = ex.face;
  REQUIRE(f.size() == 8);
  REQUIRE(ex.view.left_face() == f.at("afuv"));
  NetworkSpec n = build_network(ex.view, ex.s, ex.chosen, ex.pre);
  CHECK(n.demand_of(K::Face, f.at("abu")) == 1);
  CHECK(n.demand_of(K::Face, f.at("bcu")) == 1);
  CHECK(n.demand_of(K::Face, f.at("abef")) == 1);
  CHECK(n.demand_of(K::Face, f.at("bcde")) == 1);
  CHECK(n.demand_of(K::Face, f.at("deg")) == 2);
  CHECK(n.demand_of(K::Face, f.at("efgv")) == 2);
  CHECK(n.demand_of(K::TurnLeft) == 4);
  CHECK(n.demand_of(K::TurnRight) == 2);
  CHECK(n.demand_of(K::Heart) == 1);
  CHECK(n.demand_of(K::PoleV) == 1);
  CHECK(n.demand_of(K::PoleU) == -1);
  CHECK(to_string(n).find("t^v=1") != std::string::npos);
  Shape odd = ex.s;
  odd.tl += 1;
  CHECK_THROWS_AS(build_network(ex.view, odd, ex.chosen, ex.pre), NegativeDemand);
  Shape low = ex.s;
  low.tr = -6;
  CHECK_THROWS_AS(build_network(ex.view, low, ex.chosen, ex.pre), NegativeDemand);
}

TEST_CASE("R-node sets agree with exhaustive search") {
  auto blocks = planar_blocks(small_corpus(500, corpus_seed()));
  int compared = 0, nonempty = 0;
  for (TauPolicy policy : {TauPolicy::Safe, TauPolicy::Sources})
    for (const Digraph& g : blocks)
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
          const TauRange r = tau_range(policy, res.info[x]);
          RNodeContext ctx{g, res.tree, x, res.sets, res.info, r};
          FeasibleSet got = r_node_sources(ctx);
          CHECK(got == oracle_node_set(g, res.tree, x, r));
          for (const Shape& s : got.shapes()) {
            auto children = r_node_sources_realize(ctx, s);
            REQUIRE(children);
            const Skeleton& sk = res.tree.node(x).skeleton;
            for (size_t e = 0; e < sk.ends.size(); ++e)
              if (sk.edge_child[e] >= 0) CHECK(res.sets[sk.edge_child[e]].contains((*children)[e]));
          }
          ++compared;
          nonempty += !got.empty();
        }
      }
  CHECK(compared > 1000);
  CHECK(nonempty > 500);
}

TEST_CASE("decision with the flow backend agrees with exhaustive search") {
  for (const auto& inst : small_corpus(200, corpus_seed())) {
    Verdict v = decide_upward_planar(inst.graph, flow_subprocedure());
    CHECK_MESSAGE(v.upward == brute_force_upward_planar(inst.graph).upward, inst.name);
  }
}
