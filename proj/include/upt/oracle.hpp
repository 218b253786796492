// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "upt/digraph.hpp"
#include "upt/embedding.hpp"
#include "upt/shapes.hpp"

namespace upt {

constexpr int kOracleEdgeGuard = 14;

// Calls fn for every planar rotation system paired with every outer face.
// Stops early when fn returns false. Throws TooLarge above the guard.
void for_each_embedding(const Digraph& g, const std::function<bool(const PlanarEmbedding&)>& fn,
                        int guard = kOracleEdgeGuard);
std::vector<PlanarEmbedding> enumerate_embeddings(const Digraph& g, int guard = kOracleEdgeGuard);

// Exhaustive search over large-angle placements for one fixed embedding.
// Independent of fixed_embedding_test; used as its reference.
std::optional<AngleAssignment> exhaustive_fixed_test(const Digraph& g, const PlanarEmbedding& emb);

struct OracleVerdict {
  bool upward = false;
  std::optional<PlanarEmbedding> embedding;
  std::optional<AngleAssignment> assignment;
};

OracleVerdict brute_force_upward_planar(const Digraph& g, int guard = kOracleEdgeGuard);

// Every shape description of a uv-external upward planar embedding of g.
std::vector<Shape> brute_force_feasible_set(const Digraph& g, int u, int v,
                                            int guard = kOracleEdgeGuard);

// Shape of one uv-external embedding under an assignment (the oracle's own
// boundary walk); none if u or v is not on the outer face exactly once.
std::optional<Shape> shape_of(const Digraph& g, const PlanarEmbedding& emb,
                              const AngleAssignment& lambda, int u, int v);

}  // namespace upt
