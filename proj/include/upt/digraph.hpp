// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "upt/errors.hpp"

namespace upt {

struct Edge {
  int tail = -1;
  int head = -1;
};

// Directed graph with string vertex tokens mapped to dense ids.
// Acyclicity is enforced by validate_dag, not by the container.
class Digraph {
public:
  int add_vertex(const std::string& name);
  int add_edge(int tail, int head);
  int add_edge(const std::string& tail, const std::string& head);

  int n() const { return static_cast<int>(names_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }
  int outdeg(int v) const { return static_cast<int>(out_[v].size()); }
  int indeg(int v) const { return static_cast<int>(in_[v].size()); }
  int degree(int v) const { return indeg(v) + outdeg(v); }
  const std::string& name(int v) const { return names_[v]; }
  std::optional<int> find(const std::string& name) const;
  int id(const std::string& name) const;  // throws UnknownVertex
  std::optional<int> find_edge(int tail, int head) const;
  int other(int e, int v) const {
    return edges_[e].tail == v ? edges_[e].head : edges_[e].tail;
  }

  bool is_source(int v) const { return in_[v].empty(); }
  bool is_sink(int v) const { return out_[v].empty(); }
  bool is_switch(int v) const { return is_source(v) || is_sink(v); }
  std::vector<int> sources() const;
  std::vector<int> sinks() const;
  bool connected() const;

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_, in_;
};

// Builds a digraph from raw (tail, head) tokens; rejects self loops,
// duplicates, cycles and disconnected input in that order.
Digraph validate_dag(const std::vector<std::pair<std::string, std::string>>& raw);

struct ExpandedDigraph {
  Digraph digraph;
  std::vector<std::optional<int>> special_edge;  // per expanded vertex
  std::vector<int> origin;                       // expanded vertex -> input vertex
};

// Splits every non-switch vertex v into v#1 (in-edges) and v#2 (out-edges)
// joined by the special edge (v#1, v#2).
ExpandedDigraph expand(const Digraph& g);
// An already expanded digraph is returned unchanged.
ExpandedDigraph expand(const ExpandedDigraph& g);

enum class VertexClass { Source, Sink, Top, Bottom, Internal };
const char* to_string(VertexClass c);

VertexClass classify(const Digraph& g, int v);
VertexClass classify(const Digraph& g, const std::string& v);

struct BlockCutTree {
  struct Block {
    std::vector<int> vertices;  // sorted
    std::vector<int> edges;     // sorted edge ids of the digraph
  };
  std::vector<Block> blocks;
  std::vector<int> cut_vertices;              // sorted
  std::vector<std::vector<int>> block_cuts;   // block -> its cut vertices
  std::vector<std::vector<int>> vertex_blocks;  // vertex -> blocks containing it
  std::optional<int> root;
};

BlockCutTree block_cut_tree(const Digraph& g);

// Sub-digraph induced by an edge subset. Vertex names are kept; the mapping
// back to the parent ids is returned through the optional out parameters.
Digraph edge_subgraph(const Digraph& g, const std::vector<int>& edges,
                      std::vector<int>* vertex_map = nullptr,
                      std::vector<int>* edge_map = nullptr);

}  // namespace upt
