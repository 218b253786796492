// SPDX-License-Identifier: MIT
#include <algorithm>

#include "doctest.h"
#include "upt/corpus.hpp"
#include "upt/digraph.hpp"

using namespace upt;

namespace {
std::vector<std::string> names(const Digraph& g, const std::vector<int>& vs) {
  std::vector<std::string> out;
  for (int v : vs) out.push_back(g.name(v));
  return out;
}
}  // namespace

TEST_CASE("validate_dag accepts a path") {
  Digraph g = validate_dag({{"a", "b"}, {"b", "c"}});
  CHECK(g.n() == 3);
  CHECK(names(g, g.sources()) == std::vector<std::string>{"a"});
  CHECK(names(g, g.sinks()) == std::vector<std::string>{"c"});
}

TEST_CASE("validate_dag reports a two-cycle with its witness") {
  try {
    validate_dag({{"a", "b"}, {"b", "a"}});
    FAIL("expected CycleFound");
  } catch (const CycleFound& c) {
    CHECK(c.cycle() == std::vector<std::string>{"a", "b"});
  }
}

TEST_CASE("validate_dag witness is a real cycle") {
  std::vector<std::pair<std::string, std::string>> raw = {
      {"s", "a"}, {"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "t"}};
  try {
    validate_dag(raw);
    FAIL("expected CycleFound");
  } catch (const CycleFound& c) {
    const auto& cyc = c.cycle();
    REQUIRE(cyc.size() == 3);
    for (size_t i = 0; i < cyc.size(); ++i) {
      auto arc = std::make_pair(cyc[i], cyc[(i + 1) % cyc.size()]);
      CHECK(std::find(raw.begin(), raw.end(), arc) != raw.end());
    }
  }
}

TEST_CASE("validate_dag rejects malformed input") {
  CHECK_THROWS_AS(validate_dag({{"a", "b"}, {"c", "d"}}), Disconnected);
  CHECK_THROWS_AS(validate_dag({{"a", "a"}}), SelfLoop);
  CHECK_THROWS_AS(validate_dag({{"a", "b"}, {"a", "b"}}), DuplicateEdge);
  CHECK_THROWS_AS(validate_dag({}), Disconnected);
}

TEST_CASE("expand leaves a single edge unchanged") {
  ExpandedDigraph x = expand(validate_dag({{"u", "v"}}));
  CHECK(x.digraph.n() == 2);
  CHECK(x.digraph.m() == 1);
}

TEST_CASE("expand splits the middle of a path") {
  ExpandedDigraph x = expand(validate_dag({{"a", "b"}, {"b", "c"}}));
  const Digraph& g = x.digraph;
  CHECK(g.n() == 4);
  CHECK(g.m() == 3);
  int b1 = g.id("b#1"), b2 = g.id("b#2");
  CHECK(g.find_edge(g.id("a"), b1));
  CHECK(g.find_edge(b2, g.id("c")));
  auto special = g.find_edge(b1, b2);
  REQUIRE(special);
  CHECK(x.special_edge[b1] == *special);
  CHECK(x.special_edge[b2] == *special);
  CHECK(x.origin[b1] == x.origin[b2]);
}

TEST_CASE("expand of the diamond") {
  Digraph g = validate_dag({{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  ExpandedDigraph x = expand(g);
  CHECK(x.digraph.n() == 6);
  CHECK(x.digraph.m() == 6);
  CHECK(names(x.digraph, x.digraph.sources()) == std::vector<std::string>{"a"});
}

TEST_CASE("classify") {
  Digraph g = validate_dag({{"a", "b"}, {"b", "c"}});
  CHECK(classify(g, "a") == VertexClass::Source);
  CHECK(classify(g, "c") == VertexClass::Sink);
  ExpandedDigraph x = expand(g);
  CHECK(classify(x.digraph, "b#1") == VertexClass::Top);
  CHECK_THROWS_AS(classify(g, "zz"), UnknownVertex);
  Digraph h = validate_dag({{"a", "x"}, {"b", "x"}, {"x", "c"}});
  CHECK(classify(h, "x") == VertexClass::Bottom);
  Digraph k = validate_dag({{"a", "x"}, {"b", "x"}, {"x", "c"}, {"x", "d"}});
  CHECK(classify(k, "x") == VertexClass::Internal);
}

TEST_CASE("block cut tree examples") {
  auto tri = block_cut_tree(validate_dag({{"a", "b"}, {"b", "c"}, {"a", "c"}}));
  CHECK(tri.blocks.size() == 1);
  CHECK(tri.cut_vertices.empty());

  Digraph path = validate_dag({{"a", "b"}, {"b", "c"}});
  auto p = block_cut_tree(path);
  CHECK(p.blocks.size() == 2);
  CHECK(p.cut_vertices == std::vector<int>{path.id("b")});

  Digraph bow = validate_dag(
      {{"a", "b"}, {"b", "v"}, {"a", "v"}, {"v", "c"}, {"v", "d"}, {"c", "d"}});
  auto bt = block_cut_tree(bow);
  CHECK(bt.blocks.size() == 2);
  CHECK(bt.cut_vertices == std::vector<int>{bow.id("v")});
}

TEST_CASE("digraph properties over the exhaustive corpus") {
  for (const auto& inst : exhaustive_corpus(5)) {
    const Digraph& g = inst.graph;
    ExpandedDigraph x = expand(g);
    ExpandedDigraph xx = expand(x);
    CHECK(xx.digraph.n() == x.digraph.n());
    CHECK(xx.digraph.m() == x.digraph.m());
    CHECK(x.digraph.sources().size() == g.sources().size());
    CHECK(x.digraph.n() <= 2 * g.n());
    for (int v = 0; v < x.digraph.n(); ++v) {
      bool ok = x.digraph.indeg(v) <= 1 || x.digraph.outdeg(v) <= 1;
      CHECK(ok);
    }
    auto bct = block_cut_tree(g);
    int total = 0;
    for (const auto& b : bct.blocks) total += static_cast<int>(b.vertices.size()) - 1;
    CHECK(total == g.n() - 1);
    std::vector<int> seen(g.m(), 0);
    for (const auto& b : bct.blocks)
      for (int e : b.edges) ++seen[e];
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    // Expansion never splits a block; original edge ids are kept.
    auto xbct = block_cut_tree(x.digraph);
    std::vector<int> block_of(x.digraph.m(), -1);
    for (int b = 0; b < static_cast<int>(xbct.blocks.size()); ++b)
      for (int e : xbct.blocks[b].edges) block_of[e] = b;
    for (const auto& b : bct.blocks)
      for (int e : b.edges) CHECK(block_of[e] == block_of[b.edges.front()]);
  }
}
