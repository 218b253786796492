// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upt/digraph.hpp"

namespace upt {

// Rotation system plus outer face. Edge e joins ends[e].first and
// ends[e].second; dart 2e runs first->second and dart 2e+1 runs back.
// The face of a dart lies to its left: the dart after (a->b) leaves b along
// the clockwise successor of the edge ab in the rotation of b.
struct PlanarEmbedding {
  int n = 0;
  std::vector<std::pair<int, int>> ends;
  std::vector<std::vector<int>> rotation;  // clockwise incident edges
  int outer_dart = -1;

  int m() const { return static_cast<int>(ends.size()); }
  int tail(int d) const { return d & 1 ? ends[d >> 1].second : ends[d >> 1].first; }
  int head(int d) const { return d & 1 ? ends[d >> 1].first : ends[d >> 1].second; }
  int dart_from(int e, int v) const { return ends[e].first == v ? 2 * e : 2 * e + 1; }
  // Next dart of the face containing d.
  int next(int d) const;
};

// Embedding skeleton sharing the edge ids of g; rotation must list g's edges.
PlanarEmbedding make_embedding(const Digraph& g, std::vector<std::vector<int>> rotation,
                               int outer_dart = 0);

PlanarEmbedding mirror(const PlanarEmbedding& emb);

struct Faces {
  std::vector<std::vector<int>> walks;  // canonical dart sequences
  std::vector<int> face_of_dart;
  int outer = -1;
  int count() const { return static_cast<int>(walks.size()); }
};

// Traces all faces; throws NonPlanarRotation when V - E + F != 2.
Faces trace_faces(const PlanarEmbedding& emb);

struct Angle {
  int face = -1;
  int vertex = -1;
  int e1 = -1;  // edge of the dart entering the vertex
  int e2 = -1;  // edge of the dart leaving it
  bool flat = false;
};

// One angle per dart: the angle at head(d) between d and next(d).
std::vector<Angle> angles(const Digraph& g, const PlanarEmbedding& emb, const Faces& faces);

using AngleAssignment = std::vector<int>;  // label per dart

struct UpCheck {
  bool ok = true;
  std::string condition;  // "UP0".."UP3" when violated
  int vertex = -1;
  int face = -1;
  explicit operator bool() const { return ok; }
};

UpCheck check_up_conditions(const Digraph& g, const PlanarEmbedding& emb,
                            const AngleAssignment& lambda);

struct FlowNetwork {
  struct Arc {
    int source = 0;
    int sink = 0;
    int capacity = 0;
  };
  std::vector<int> supply;
  std::vector<int> demand;
  std::vector<Arc> arcs;
};

struct FlowResult {
  int value = 0;
  std::vector<int> arc_flow;
};

FlowResult max_flow(const FlowNetwork& net);

// Flow test for a fixed embedding; returns a satisfying assignment or none.
std::optional<AngleAssignment> fixed_embedding_test(const Digraph& g,
                                                    const PlanarEmbedding& emb);

// Clockwise rotation system (edge ids per vertex) of a planar graph, or none
// when the graph is not planar.
std::optional<std::vector<std::vector<int>>> planar_rotation(
    int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace upt
