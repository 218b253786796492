// SPDX-License-Identifier: MIT
#include "upt/digraph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace upt {

int Digraph::add_vertex(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  int id = n();
  names_.push_back(name);
  index_.emplace(name, id);
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

int Digraph::add_edge(int tail, int head) {
  int e = m();
  edges_.push_back({tail, head});
  out_[tail].push_back(e);
  in_[head].push_back(e);
  return e;
}

int Digraph::add_edge(const std::string& tail, const std::string& head) {
  int t = add_vertex(tail);
  int h = add_vertex(head);
  return add_edge(t, h);
}

std::optional<int> Digraph::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Digraph::id(const std::string& name) const {
  auto v = find(name);
  if (!v) throw UnknownVertex(name);
  return *v;
}

std::optional<int> Digraph::find_edge(int tail, int head) const {
  for (int e : out_[tail])
    if (edges_[e].head == head) return e;
  return std::nullopt;
}

std::vector<int> Digraph::sources() const {
  std::vector<int> r;
  for (int v = 0; v < n(); ++v)
    if (is_source(v)) r.push_back(v);
  return r;
}

std::vector<int> Digraph::sinks() const {
  std::vector<int> r;
  for (int v = 0; v < n(); ++v)
    if (is_sink(v)) r.push_back(v);
  return r;
}

bool Digraph::connected() const {
  if (n() == 0) return false;
  std::vector<char> seen(n(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto* list : {&out_[v], &in_[v]})
      for (int e : *list) {
        int w = other(e, v);
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
  }
  return count == n();
}

namespace {

// Kahn's algorithm; on failure walks backwards inside the residual graph
// until a vertex repeats.
std::optional<std::vector<int>> find_cycle(const Digraph& g) {
  std::vector<int> indeg(g.n());
  std::vector<int> queue;
  for (int v = 0; v < g.n(); ++v) {
    indeg[v] = g.indeg(v);
    if (indeg[v] == 0) queue.push_back(v);
  }
  std::vector<char> removed(g.n(), 0);
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    removed[v] = 1;
    for (int e : g.out_edges(v))
      if (--indeg[g.edge(e).head] == 0) queue.push_back(g.edge(e).head);
  }
  if (static_cast<int>(queue.size()) == g.n()) return std::nullopt;

  int start = 0;
  while (removed[start]) ++start;
  std::vector<int> pos(g.n(), -1);
  std::vector<int> walk;
  int v = start;
  while (pos[v] < 0) {
    pos[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    for (int e : g.in_edges(v))
      if (!removed[g.edge(e).tail]) {
        v = g.edge(e).tail;
        break;
      }
  }
  // walk[pos[v]..] follows edges backwards; reverse for forward order.
  std::vector<int> cycle(walk.begin() + pos[v], walk.end());
  std::reverse(cycle.begin(), cycle.end());
  auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it, cycle.end());
  return cycle;
}

}  // namespace

Digraph validate_dag(const std::vector<std::pair<std::string, std::string>>& raw) {
  Digraph g;
  std::set<std::pair<int, int>> seen;
  for (const auto& [t, h] : raw) {
    if (t == h) throw SelfLoop(t);
    int a = g.add_vertex(t);
    int b = g.add_vertex(h);
    if (!seen.insert({a, b}).second) throw DuplicateEdge(t + " " + h);
    g.add_edge(a, b);
  }
  if (auto c = find_cycle(g)) {
    std::vector<std::string> names;
    for (int v : *c) names.push_back(g.name(v));
    throw CycleFound(names);
  }
  if (!g.connected()) throw Disconnected("input digraph is not connected");
  return g;
}

ExpandedDigraph expand(const Digraph& g) {
  ExpandedDigraph x;
  std::vector<int> in_id(g.n()), out_id(g.n());
  for (int v = 0; v < g.n(); ++v) {
    if (g.is_switch(v)) {
      in_id[v] = out_id[v] = x.digraph.add_vertex(g.name(v));
      x.origin.push_back(v);
    } else {
      in_id[v] = x.digraph.add_vertex(g.name(v) + "#1");
      x.origin.push_back(v);
      out_id[v] = x.digraph.add_vertex(g.name(v) + "#2");
      x.origin.push_back(v);
    }
  }
  x.special_edge.assign(x.digraph.n(), std::nullopt);
  for (const Edge& e : g.edges()) x.digraph.add_edge(out_id[e.tail], in_id[e.head]);
  for (int v = 0; v < g.n(); ++v) {
    if (g.is_switch(v)) continue;
    int s = x.digraph.add_edge(in_id[v], out_id[v]);
    x.special_edge[in_id[v]] = s;
    x.special_edge[out_id[v]] = s;
  }
  return x;
}

ExpandedDigraph expand(const ExpandedDigraph& g) { return g; }

const char* to_string(VertexClass c) {
  switch (c) {
    case VertexClass::Source: return "source";
    case VertexClass::Sink: return "sink";
    case VertexClass::Top: return "top";
    case VertexClass::Bottom: return "bottom";
    case VertexClass::Internal: return "internal";
  }
  return "?";
}

VertexClass classify(const Digraph& g, int v) {
  if (v < 0 || v >= g.n()) throw UnknownVertex(std::to_string(v));
  if (g.indeg(v) == 0) return VertexClass::Source;
  if (g.outdeg(v) == 0) return VertexClass::Sink;
  if (g.indeg(v) == 1) return VertexClass::Top;
  if (g.outdeg(v) == 1) return VertexClass::Bottom;
  return VertexClass::Internal;
}

VertexClass classify(const Digraph& g, const std::string& v) {
  return classify(g, g.id(v));
}

Digraph edge_subgraph(const Digraph& g, const std::vector<int>& edges,
                      std::vector<int>* vertex_map, std::vector<int>* edge_map) {
  std::vector<int> verts;
  for (int e : edges) {
    verts.push_back(g.edge(e).tail);
    verts.push_back(g.edge(e).head);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  Digraph h;
  std::map<int, int> local;
  for (int v : verts) local[v] = h.add_vertex(g.name(v));
  std::vector<int> emap;
  for (int e : edges) {
    h.add_edge(local[g.edge(e).tail], local[g.edge(e).head]);
    emap.push_back(e);
  }
  if (vertex_map) *vertex_map = verts;
  if (edge_map) *edge_map = emap;
  return h;
}

}  // namespace upt
