// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "upt/embedding.hpp"
#include "upt/framework.hpp"

namespace upt {

using AdjacencyList = std::vector<std::vector<int>>;

// Embedded graph with every edge subdivided and a vertex per face joined to
// the true and edge vertices on its boundary. Ids: true vertices first, then
// one per edge, then one per face in trace_faces order.
struct EmbeddingGraph {
  enum class Kind { True, Edge, Face };
  int true_count = 0;
  int edge_count = 0;
  int face_count = 0;
  AdjacencyList adj;  // sorted
  int outer = -1;     // face vertex of the outer face

  int size() const { return static_cast<int>(adj.size()); }
  int edge_total() const;
  Kind kind(int x) const;
  int edge_vertex(int e) const { return true_count + e; }
  int face_vertex(int f) const { return true_count + edge_count + f; }
  bool adjacent(int a, int b) const;
};

EmbeddingGraph embedding_graph(const PlanarEmbedding& emb);
// Joins consecutive edge vertices around each listed true vertex, so that
// every angle there lies in a clique.
void augment_around(EmbeddingGraph& g, const PlanarEmbedding& emb,
                    const std::vector<int>& vertices);

struct NiceTreeDecomposition {
  enum class Kind { Leaf, Introduce, Forget, Join };
  struct Node {
    Kind kind = Kind::Leaf;
    std::vector<int> bag;  // sorted
    int vertex = -1;       // introduced or forgotten vertex
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  int root = -1;
  int width() const;
};

const char* to_string(NiceTreeDecomposition::Kind k);

std::vector<int> min_fill_order(const AdjacencyList& adj);
int order_width(const AdjacencyList& adj, const std::vector<int>& order);
// Branch and bound over elimination orders for one narrower than order;
// returns order itself if none is found within the node budget.
std::vector<int> improve_order(const AdjacencyList& adj, const std::vector<int>& order,
                               long budget = 200000);
// keep (if >= 0) joins every bag except the root's; leaves hold only keep.
NiceTreeDecomposition nice_decomposition(const AdjacencyList& adj, const std::vector<int>& order,
                                         int keep = -1);
// Min-fill ordering, improved exactly when its width is at most 6.
NiceTreeDecomposition tree_decomposition(const AdjacencyList& adj, int keep = -1);
NiceTreeDecomposition single_bag_decomposition(int n, int keep = -1);
// Empty when td is a nice tree decomposition of adj with keep in every
// non-root bag; otherwise the first violated property.
std::string check_decomposition(const AdjacencyList& adj, const NiceTreeDecomposition& td,
                                int keep = -1);

// One flip of an R-node: the skeleton without its parent edge (h), the child
// sets per edge of h, and the augmented embedding graph of h.
struct TwInstance {
  PlanarEmbedding h;
  Faces faces;
  int u = -1;
  int v = -1;
  std::vector<int> skeleton_edge;  // h edge -> skeleton edge
  std::vector<std::string> names;
  std::vector<bool> is_switch;                    // per vertex, within the pertinent graph
  std::vector<std::array<bool, 2>> child_switch;  // per h edge and end
  std::vector<std::vector<Shape>> sets;           // per h edge
  std::vector<char> left_edge, right_edge;        // per h edge: on the left / right outer path
  std::vector<char> left_vertex, right_vertex;    // inner vertices of the outer paths
  int zeta = 0;
  EmbeddingGraph graph;
};

// zeta <= 0 selects the number of vertices of the pertinent graph.
TwInstance tw_instance(const RNodeContext& ctx, int flip, int zeta = 0);

struct ValidPair {
  struct Large {
    bool in_edge = false;  // inside the component of an edge, else in a face
    int id = -1;           // h edge or h face
  };
  std::vector<std::optional<Large>> alpha;  // per vertex; switch vertices only
  std::vector<Shape> beta;                  // per h edge
};

std::optional<ValidPair> valid_pair_dp(const TwInstance& inst, const NiceTreeDecomposition& td,
                                       const Shape& psi, std::ostream* trace = nullptr);
// Empty when the pair satisfies every validity condition for psi; otherwise
// the failed condition. Independent of the dynamic program.
std::string check_valid_pair(const TwInstance& inst, const Shape& psi, const ValidPair& p);

// Angle and shape tables: one line per switch vertex, then one per edge.
std::string to_string(const TwInstance& inst, const ValidPair& p);

// Receives every pair used to realize a shape, after validation.
using PairSink = std::function<void(const RNodeContext&, const TwInstance&, const Shape&,
                                    const ValidPair&)>;

FeasibleSet r_node_treewidth(const RNodeContext& ctx, std::ostream* trace = nullptr, int zeta = 0);
// Child shapes per skeleton edge realizing target.
std::optional<std::vector<Shape>> r_node_treewidth_realize(const RNodeContext& ctx,
                                                           const Shape& target, int zeta = 0,
                                                           const PairSink& sink = {});
RNodeSubprocedure treewidth_subprocedure(std::ostream* trace = nullptr, int zeta = 0,
                                         PairSink sink = {});

}  // namespace upt
