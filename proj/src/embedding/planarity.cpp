// SPDX-License-Identifier: MIT
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <boost/property_map/property_map.hpp>

#include "upt/embedding.hpp"

namespace upt {

std::optional<std::vector<std::vector<int>>> planar_rotation(
    int n, const std::vector<std::pair<int, int>>& edges) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                      boost::property<boost::vertex_index_t, int>,
                                      boost::property<boost::edge_index_t, int>>;
  using EdgeDesc = boost::graph_traits<Graph>::edge_descriptor;
  Graph g(n);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    auto e = boost::add_edge(edges[i].first, edges[i].second, g).first;
    boost::put(boost::edge_index, g, e, i);
  }
  std::vector<std::vector<EdgeDesc>> storage(n);
  auto emb = boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, g));
  if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                           boost::boyer_myrvold_params::embedding = emb))
    return std::nullopt;
  std::vector<std::vector<int>> rot(n);
  for (int v = 0; v < n; ++v)
    for (const auto& e : storage[v]) rot[v].push_back(boost::get(boost::edge_index, g, e));
  return rot;
}

}  // namespace upt
