// SPDX-License-Identifier: MIT
#include "doctest.h"
#include "upt/corpus.hpp"
#include "upt/oracle.hpp"

using namespace upt;

TEST_CASE("enumerate_embeddings counts") {
  CHECK(enumerate_embeddings(validate_dag({{"u", "v"}})).size() == 1);
  // One rotation system, either face outer.
  CHECK(enumerate_embeddings(validate_dag({{"a", "b"}, {"b", "c"}, {"a", "c"}})).size() == 2);
  // K4: one rotation system up to mirror, two mirror images, four faces each.
  Digraph k4 = validate_dag({{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
  CHECK(enumerate_embeddings(k4).size() == 8);
}

TEST_CASE("enumerate_embeddings guard") {
  std::vector<std::pair<std::string, std::string>> raw;
  for (int i = 0; i < 15; ++i) raw.emplace_back("v" + std::to_string(i), "v" + std::to_string(i + 1));
  CHECK_THROWS_AS(enumerate_embeddings(validate_dag(raw)), TooLarge);
  CHECK_THROWS_AS(brute_force_upward_planar(validate_dag(raw)), TooLarge);
}

TEST_CASE("paths and the triangle are upward planar") {
  CHECK(brute_force_upward_planar(validate_dag({{"a", "b"}, {"b", "c"}, {"c", "d"}})).upward);
  CHECK(brute_force_upward_planar(validate_dag({{"a", "b"}, {"c", "b"}, {"c", "d"}})).upward);
  Digraph tri = validate_dag({{"a", "b"}, {"b", "c"}, {"a", "c"}});
  OracleVerdict v = brute_force_upward_planar(tri);
  REQUIRE(v.upward);
  REQUIRE(v.embedding);
  REQUIRE(v.assignment);
  CHECK(check_up_conditions(tri, *v.embedding, *v.assignment));
}

TEST_CASE("a pinned non upward planar DAG") {
  // Smallest failure found by exhaustive search over 5-vertex instances: the
  // non-switch hub forces both of its in-neighbours below both out-neighbours.
  Digraph g = validate_dag({{"v1", "v0"}, {"v2", "v0"}, {"v0", "v3"}, {"v0", "v4"}, {"v1", "v3"},
                            {"v1", "v4"}, {"v2", "v3"}, {"v2", "v4"}});
  CHECK_FALSE(brute_force_upward_planar(g).upward);
  CHECK_FALSE(enumerate_embeddings(g).empty());
}

TEST_CASE("both verdicts occur on the exhaustive corpus") {
  int yes = 0, no = 0;
  for (const auto& inst : exhaustive_corpus(5)) {
    OracleVerdict v = brute_force_upward_planar(inst.graph);
    if (v.upward) {
      ++yes;
      REQUIRE(v.embedding);
      CHECK(check_up_conditions(inst.graph, *v.embedding, *v.assignment));
    } else {
      ++no;
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("feasible set of a single edge") {
  Digraph g = validate_dag({{"u", "v"}});
  auto f = brute_force_feasible_set(g, g.id("u"), g.id("v"));
  REQUIRE(f.size() == 1);
  CHECK(f[0] == boring_shape(Boring::Sausage));
  auto r = brute_force_feasible_set(g, g.id("v"), g.id("u"));
  REQUIRE(r.size() == 1);
  CHECK(r[0] == boring_shape(Boring::InvertedSausage));
}

TEST_CASE("feasible set of two parallel paths") {
  Digraph g = validate_dag({{"u", "a"}, {"a", "v"}, {"u", "b"}, {"b", "v"}});
  auto f = brute_force_feasible_set(g, g.id("u"), g.id("v"));
  CHECK(f == std::vector<Shape>{boring_shape(Boring::Sausage)});
}

TEST_CASE("oracle shapes are coherent on the corpus") {
  for (const auto& inst : exhaustive_corpus(4)) {
    const Digraph& g = inst.graph;
    for (const Edge& e : g.edges())
      for (const Shape& s : brute_force_feasible_set(g, e.tail, e.head)) {
        CHECK(s.tl + s.tr + s.lu + s.lv == 2);
        CHECK_MESSAGE(is_coherent(s), inst.name << " " << to_string(s));
      }
  }
}
