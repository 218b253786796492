// SPDX-License-Identifier: MIT
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "upt/embedding.hpp"

namespace upt {

FlowResult max_flow(const FlowNetwork& net) {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<boost::edge_capacity_t, long,
                      boost::property<boost::edge_residual_capacity_t, long,
                                      boost::property<boost::edge_reverse_t,
                                                      Traits::edge_descriptor>>>>;
  const int ns = static_cast<int>(net.supply.size());
  const int nt = static_cast<int>(net.demand.size());
  const int s = ns + nt, t = s + 1;
  Graph g(ns + nt + 2);
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto res = boost::get(boost::edge_residual_capacity, g);
  auto link = [&](int a, int b, long c) {
    auto e = boost::add_edge(a, b, g).first;
    auto r = boost::add_edge(b, a, g).first;
    cap[e] = c;
    cap[r] = 0;
    rev[e] = r;
    rev[r] = e;
    return e;
  };
  for (int i = 0; i < ns; ++i) link(s, i, net.supply[i]);
  for (int j = 0; j < nt; ++j) link(ns + j, t, net.demand[j]);
  std::vector<Traits::edge_descriptor> arcs;
  for (const auto& a : net.arcs) arcs.push_back(link(a.source, ns + a.sink, a.capacity));

  FlowResult r;
  r.value = static_cast<int>(boost::push_relabel_max_flow(g, s, t));
  for (auto e : arcs) r.arc_flow.push_back(static_cast<int>(cap[e] - res[e]));
  return r;
}

}  // namespace upt
