// SPDX-License-Identifier: MIT
#include <map>
#include <set>

#include "doctest.h"
#include "oracle_rnode.hpp"
#include "upt/corpus.hpp"
#include "upt/framework.hpp"

using namespace upt;
using upt::testing::oracle_node_set;
using upt::testing::oracle_rnode;
using upt::testing::planar_blocks;
using upt::testing::small_corpus;

namespace {

TauRange wide() { return {-6, 6}; }

FeasibleSet only(const Shape& s) {
  FeasibleSet f = wide().empty_set();
  f.insert(s);
  return f;
}

std::set<Shape> as_set(const FeasibleSet& f) {
  auto v = f.shapes();
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("an edge has the shape of its orientation") {
  Edge e{0, 1};
  CHECK(as_set(q_node_feasible(e, 0, 1, wide())) == std::set{boring_shape(Boring::Sausage)});
  CHECK(as_set(q_node_feasible(e, 1, 0, wide())) ==
        std::set{boring_shape(Boring::InvertedSausage)});
  CHECK_THROWS(q_node_feasible(e, 0, 2, wide()));
}

TEST_CASE("series of two edges") {
  FeasibleSet uw = q_node_feasible({0, 2}, 0, 2, wide());
  FeasibleSet wv = q_node_feasible({2, 1}, 2, 1, wide());
  FeasibleSet vw = q_node_feasible({1, 2}, 2, 1, wide());
  CHECK(as_set(s_node_feasible(uw, wv, wide())) == std::set{boring_shape(Boring::Sausage)});
  CHECK(as_set(s_node_feasible(uw, vw, wide())) ==
        std::set{boring_shape(Boring::Hat), boring_shape(Boring::InvertedHat)});
  CHECK(s_node_feasible(uw, FeasibleSet(-6, 6), wide()).empty());
}

TEST_CASE("parallel edges") {
  FeasibleSet a = only(boring_shape(Boring::Sausage));
  FeasibleSet b = only(boring_shape(Boring::Sausage));
  auto f = p_node_feasible({{&a, true, true}, {&b, true, true}}, {true, true}, wide());
  CHECK(as_set(f) == std::set{boring_shape(Boring::Sausage)});
  CHECK_THROWS(p_node_feasible({{&a, true, true}}, {true, true}, wide()));
  auto arr = p_node_realize({{&a, true, true}, {&b, true, true}}, {true, true},
                            boring_shape(Boring::Sausage));
  REQUIRE(arr);
  CHECK(arr->sequence.elements.size() == 1);
  CHECK(arr->members[0].size() == 2);
}

TEST_CASE("shape sequences") {
  using M = ShapeSequence::Mark;
  Shape sausage = boring_shape(Boring::Sausage);
  Shape heart = boring_shape(Boring::Heart);
  ShapeSequence run{{{sausage, M::Plus}}};
  CHECK(shape_sequence_check(run, {true, true}) == std::vector{sausage});
  ShapeSequence twice{{{sausage, M::One}, {sausage, M::Star}}};
  CHECK(twice.size() == 1);
  CHECK(twice.reduced().elements[0].mark == M::Plus);
  ShapeSequence hearts{{{heart, M::One}, {heart, M::One}}};
  CHECK_THROWS_AS(hearts.reduced(), NotThinRepeat);
  CHECK_THROWS_AS(shape_sequence_check(hearts, {true, true}), NotThinRepeat);
  CHECK(to_string(run) == "[" + to_string(sausage) + "+]");
  auto ext = shape_sequence_extend(run, sausage, {true, true});
  REQUIRE(ext.size() == 1);
  CHECK(ext[0].first == run);
  CHECK(ext[0].second == std::vector{sausage});
  CHECK(shape_sequence_extend(ShapeSequence{{{heart, M::One}}}, heart, {true, true}).empty());
}

TEST_CASE("node sets agree with exhaustive search") {
  auto corpus = small_corpus(120, corpus_seed());
  auto sub = oracle_rnode();
  std::map<NodeKind, int> checked;
  for (const Digraph& g : planar_blocks(corpus)) {
    for (int e = 0; e < g.m(); ++e) {
      for (TauPolicy policy : {TauPolicy::Safe, TauPolicy::Sources}) {
        auto res = biconnected_feasible(g, e, sub, {policy, false});
        if (res.tree.size() == 0) continue;  // non planar skeleton
        for (int x = 0; x < res.tree.size(); ++x) {
          if (x == res.tree.root || !res.computed[x]) continue;
          const SpqrNode& n = res.tree.node(x);
          if (n.kind == NodeKind::R) continue;
          TauRange r = tau_range(policy, res.info[x]);
          INFO(dump(g, res.tree), " node ", x);
          FeasibleSet expected = oracle_node_set(g, res.tree, x, r);
          INFO("got ", to_string(res.sets[x]), " expected ", to_string(expected));
          CHECK(res.sets[x] == expected);
          ++checked[n.kind];
        }
        if (policy == TauPolicy::Safe) {
          const SpqrNode& root = res.tree.node(res.tree.root);
          auto whole = brute_force_feasible_set(g, root.u, root.v);
          for (const Shape& s : res.root.shapes())
            CHECK(std::find(whole.begin(), whole.end(), s) != whole.end());
        }
      }
    }
  }
  CHECK(checked[NodeKind::S] > 100);
  CHECK(checked[NodeKind::P] > 100);
}

TEST_CASE("decision agrees with exhaustive search") {
  auto corpus = small_corpus(150, corpus_seed() + 1);
  auto sub = oracle_rnode();
  int yes = 0, no = 0;
  for (const auto& inst : corpus) {
    bool expected = brute_force_upward_planar(inst.graph).upward;
    for (TauPolicy policy : {TauPolicy::Safe, TauPolicy::Sources}) {
      Verdict v = decide_upward_planar(inst.graph, sub, {policy, 1, false});
      INFO(inst.name);
      CHECK(v.upward == expected);
      CHECK(v.sigma == static_cast<int>(inst.graph.sources().size()));
      if (!v.upward) CHECK(!v.reason.empty());
    }
    (expected ? yes : no)++;
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("parallel jobs give the same verdict") {
  auto sub = oracle_rnode();
  for (const auto& inst : small_corpus(20, corpus_seed() + 2)) {
    Verdict a = decide_upward_planar(inst.graph, sub, {TauPolicy::Safe, 1, false});
    Verdict b = decide_upward_planar(inst.graph, sub, {TauPolicy::Safe, 3, false});
    CHECK(a.upward == b.upward);
  }
}
