// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upt/digraph.hpp"
#include "upt/shapes.hpp"
#include "upt/spqr.hpp"

namespace upt {

struct TauRange {
  int lo = 0;
  int hi = -1;
  bool admits(const Shape& s) const { return s.tl >= lo && s.tl <= hi && s.tr >= lo && s.tr <= hi; }
  FeasibleSet empty_set() const { return FeasibleSet(lo, hi); }
};

enum class TauPolicy { Safe, Sources };
const char* to_string(TauPolicy p);

// Facts about the pertinent graph of a node.
struct NodeInfo {
  int vertices = 0;
  int sigma = 0;  // sources other than the poles
  bool u_switch = true;  // pole is a source or sink of the pertinent graph
  bool v_switch = true;
};

std::vector<NodeInfo> node_info(const Digraph& g, const SpqrTree& t);
TauRange tau_range(TauPolicy p, const NodeInfo& info);

struct PoleKinds {
  bool u_switch = true;
  bool v_switch = true;
};

FeasibleSet q_node_feasible(const Edge& e, int u, int v, TauRange r);
FeasibleSet s_node_feasible(const FeasibleSet& f1, const FeasibleSet& f2, TauRange r);

// Left-to-right shapes of parallel components; Plus marks one or more copies
// of a thin shape and Star zero or more.
struct ShapeSequence {
  enum class Mark { One, Plus, Star };
  struct Element {
    Shape shape;
    Mark mark = Mark::One;
    bool operator==(const Element&) const = default;
  };
  std::vector<Element> elements;

  // Merges equal neighbours; throws NotThinRepeat if a repeat is not thin.
  ShapeSequence reduced() const;
  int size() const { return static_cast<int>(reduced().elements.size()); }
  bool operator==(const ShapeSequence&) const = default;
};

std::string to_string(const ShapeSequence& s);

// Shapes of every parallel composition realizing the sequence exactly.
std::vector<Shape> shape_sequence_check(const ShapeSequence& s, PoleKinds poles);

// Every way of placing s into the sequence that stays valid.
std::vector<std::pair<ShapeSequence, std::vector<Shape>>> shape_sequence_extend(
    const ShapeSequence& seq, const Shape& s, PoleKinds poles);

struct PChild {
  const FeasibleSet* set = nullptr;
  bool u_switch = true;
  bool v_switch = true;
};

FeasibleSet p_node_feasible(const std::vector<PChild>& children, PoleKinds poles, TauRange r);

// One arrangement of a parallel composition: the sequence (thin runs as Plus)
// and the child placed at each position, runs listing all of their children.
struct PArrangement {
  ShapeSequence sequence;
  std::vector<std::vector<int>> members;
};
std::optional<PArrangement> p_node_realize(const std::vector<PChild>& children, PoleKinds poles,
                                           const Shape& target);

// Input handed to an R-node subprocedure.
struct RNodeContext {
  const Digraph& g;
  const SpqrTree& tree;
  int node;
  const std::vector<FeasibleSet>& sets;  // feasible sets of all finished nodes
  const std::vector<NodeInfo>& info;
  TauRange range;
};

struct RNodeSubprocedure {
  std::string name;
  std::function<FeasibleSet(const RNodeContext&)> feasible;
  // Child shapes (per skeleton edge, parent edge ignored) realizing target.
  std::function<std::optional<std::vector<Shape>>(const RNodeContext&, const Shape&)> realize;
};

struct BiconnectedOptions {
  TauPolicy policy = TauPolicy::Safe;
  bool early_exit = true;
};

struct BiconnectedResult {
  SpqrTree tree;
  std::vector<NodeInfo> info;
  std::vector<FeasibleSet> sets;  // per node; the root holds its edge's set
  std::vector<bool> computed;
  FeasibleSet root;  // shapes of the whole block with the root edge outside
  std::string reason;  // why the result is empty, if known
};

// Bottom-up computation over the tree of g rooted at root_edge. g must be
// biconnected; a single edge is accepted as a degenerate block.
BiconnectedResult biconnected_feasible(const Digraph& g, int root_edge,
                                       const RNodeSubprocedure& sub,
                                       const BiconnectedOptions& opt = {});

// Root composition: the child of the root in parallel with the edge itself.
FeasibleSet root_feasible(const Digraph& g, const SpqrTree& t, const FeasibleSet& child,
                          const NodeInfo& child_info, TauRange r);

// Per-node shapes of one realization of the root shape, top-down.
std::optional<std::vector<std::optional<Shape>>> realize_shapes(const Digraph& g,
                                                               const BiconnectedResult& res,
                                                               const RNodeSubprocedure& sub,
                                                               const Shape& root_shape,
                                                               TauPolicy policy);

struct DecideOptions {
  TauPolicy policy = TauPolicy::Safe;
  int jobs = 1;
  bool witness = false;
};

struct BlockWitness {
  std::vector<int> vertices;  // ids in the expanded digraph
  std::vector<int> edges;
  int root_edge = -1;         // expanded digraph edge id
  Shape root_shape;
  std::vector<std::pair<int, Shape>> node_shapes;  // (tree node, shape)
};

struct Verdict {
  bool upward = false;
  int sigma = 0;
  int blocks = 0;
  int root_block = -1;
  int spqr_nodes[4] = {0, 0, 0, 0};  // S, P, Q, R over all trees built
  std::string backend;
  std::string reason;
  ExpandedDigraph expanded;
  std::vector<BlockWitness> witness;
};

Verdict decide_upward_planar(const Digraph& g, const RNodeSubprocedure& sub,
                             const DecideOptions& opt = {});

}  // namespace upt
