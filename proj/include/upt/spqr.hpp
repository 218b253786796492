// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "upt/digraph.hpp"
#include "upt/embedding.hpp"

namespace upt {

enum class NodeKind { S, P, Q, R };
const char* to_string(NodeKind k);

// Quotient multigraph of a node. Vertices are ids of the decomposed digraph;
// edge i joins ends[i] and stands for child edge_child[i], or for the parent
// when edge_child[i] == -1.
struct Skeleton {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> ends;
  std::vector<int> edge_child;

  int local(int v) const;  // index of v in vertices, -1 if absent
  int parent_edge() const;
};

struct SpqrNode {
  NodeKind kind = NodeKind::Q;
  int u = -1;  // poles, ordered
  int v = -1;
  int parent = -1;
  std::vector<int> children;
  int edge = -1;  // Q-nodes only
  Skeleton skeleton;
};

struct SpqrTree {
  std::vector<SpqrNode> nodes;
  int root = -1;  // Q-node of the reference edge

  const SpqrNode& node(int i) const { return nodes[i]; }
  int size() const { return static_cast<int>(nodes.size()); }
  // Children before parents, root last.
  std::vector<int> postorder() const;
};

// Decomposition of a biconnected digraph with respect to root_edge.
// Throws NotBiconnected, or NonPlanarSkeleton for a non planar R skeleton.
SpqrTree build_spqr(const Digraph& g, int root_edge);

// Replaces every S-node with k > 2 children by k - 1 nested binary S-nodes,
// left-deep; the original node id keeps the outermost one.
SpqrTree binarize_s_nodes(const SpqrTree& t);

struct Pertinent {
  Digraph graph;
  std::vector<int> vertex_map;  // local -> decomposed digraph
  std::vector<int> edge_map;
  int u = -1;  // poles as local ids
  int v = -1;
};

std::vector<int> pertinent_edges(const SpqrTree& t, int node);
Pertinent pertinent(const Digraph& g, const SpqrTree& t, int node);

// Both combinatorial embeddings of an R skeleton, mirror images of each other.
// Edge ids are skeleton edge indices and vertices are skeleton-local. The
// outer dart is the parent edge traversed from u to v.
std::vector<PlanarEmbedding> flips(const SpqrTree& t, int node);

std::string dump(const Digraph& g, const SpqrTree& t);

}  // namespace upt
