// SPDX-License-Identifier: MIT
#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>
#include <boost/property_map/property_map.hpp>
#include <map>

#include "upt/digraph.hpp"

namespace upt {

BlockCutTree block_cut_tree(const Digraph& g) {
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
      boost::property<boost::edge_index_t, int>>;
  Graph ug(g.n());
  for (int e = 0; e < g.m(); ++e) {
    auto [d, ok] = boost::add_edge(g.edge(e).tail, g.edge(e).head, ug);
    (void)ok;
    boost::put(boost::edge_index, ug, d, e);
  }
  std::vector<std::size_t> comp_store(g.m());
  auto comp = boost::make_iterator_property_map(comp_store.begin(),
                                                boost::get(boost::edge_index, ug));
  std::vector<std::size_t> cuts;
  auto [count, out] =
      boost::biconnected_components(ug, comp, std::back_inserter(cuts));
  (void)out;

  BlockCutTree t;
  std::vector<std::vector<int>> raw(count);
  for (auto [it, end] = boost::edges(ug); it != end; ++it)
    raw[comp[*it]].push_back(boost::get(boost::edge_index, ug, *it));
  // Order blocks by their smallest edge id for determinism.
  for (auto& edges : raw) std::sort(edges.begin(), edges.end());
  std::sort(raw.begin(), raw.end());
  for (auto& edges : raw) {
    if (edges.empty()) continue;
    BlockCutTree::Block b;
    b.edges = edges;
    for (int e : edges) {
      b.vertices.push_back(g.edge(e).tail);
      b.vertices.push_back(g.edge(e).head);
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()),
                     b.vertices.end());
    t.blocks.push_back(std::move(b));
  }
  if (g.n() == 1 && t.blocks.empty()) t.blocks.push_back({{0}, {}});

  for (auto c : cuts) t.cut_vertices.push_back(static_cast<int>(c));
  std::sort(t.cut_vertices.begin(), t.cut_vertices.end());
  t.cut_vertices.erase(std::unique(t.cut_vertices.begin(), t.cut_vertices.end()),
                       t.cut_vertices.end());

  t.vertex_blocks.assign(g.n(), {});
  t.block_cuts.assign(t.blocks.size(), {});
  for (int b = 0; b < static_cast<int>(t.blocks.size()); ++b)
    for (int v : t.blocks[b].vertices) t.vertex_blocks[v].push_back(b);
  for (int c : t.cut_vertices)
    for (int b : t.vertex_blocks[c]) t.block_cuts[b].push_back(c);
  if (!t.blocks.empty()) t.root = 0;
  return t;
}

}  // namespace upt
