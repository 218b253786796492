// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upt/embedding.hpp"
#include "upt/framework.hpp"

namespace upt {

// Turn numbers of a node whose pertinent graph has sigma_mu non-pole sources.
std::pair<int, int> turn_range(int sigma_mu);

struct ComponentClass {
  bool interesting = false;  // holds a source other than its poles
  bool extreme = false;      // next to the parent edge at a pole
};

// One embedding of an R-node skeleton plus what the flow test needs to know
// about the components. Vertices are skeleton-local, edges are skeleton edges.
struct RNodeView {
  PlanarEmbedding emb;
  Faces faces;
  int flip = 0;
  int parent = -1;  // skeleton edge standing for the rest of the graph
  int u = -1;
  int v = -1;
  std::vector<std::string> names;  // per vertex
  std::vector<bool> is_switch;     // per vertex, within the pertinent graph
  std::vector<ComponentClass> classes;  // per edge
  // Per edge: the feasible set, or the preferred set of a non-extreme boring
  // component.
  std::vector<FeasibleSet> sets;
  std::vector<std::array<bool, 2>> child_switch;  // component is a switch at each end

  // How a component enters the network. Enumerated components get every shape
  // of their set tried; the pairs are decided by the flow.
  enum class Role { Parent, Enumerated, Fixed, HatPair, HeartPair, WingPair };
  std::vector<Role> roles;
  std::vector<std::array<Shape, 2>> options;  // the two shapes of a pair
  std::vector<int> wing_vertex;  // vertex where a wing pair differs, or -1

  bool enumerated(int e) const { return roles[e] == Role::Enumerated; }
  int end_of(int e, int w) const { return emb.ends[e].first == w ? 0 : 1; }
  int left_face() const { return faces.face_of_dart[2 * parent + 1]; }
  int right_face() const { return faces.face_of_dart[2 * parent]; }
  int prev(int d) const;
};

RNodeView make_view(const RNodeContext& ctx, int flip);

std::vector<ComponentClass> classify_components(const RNodeContext& ctx,
                                                const PlanarEmbedding& emb);
// Skeleton edges, extreme or interesting components first.
std::vector<int> component_order(const std::vector<ComponentClass>& classes);

struct Precheck {
  bool pass = false;
  std::string failed;           // coherence, extreme-edge, angle or pole
  std::vector<bool> available;  // switch vertices still owed their large angle
};

// chosen holds a shape for every extreme or interesting component.
Precheck precheck(const RNodeView& view, const Shape& s,
                  const std::vector<std::optional<Shape>>& chosen);

struct NetworkSpec {
  enum class Kind {
    SwitchVertex,
    NonSwitchVertex,
    ComponentLeft,
    ComponentRight,
    BoringHat,
    BoringHeartLeft,
    BoringHeartRight,
    Face,
    TurnLeft,
    TurnRight,
    Heart,
    PoleU,
    PoleV
  };
  FlowNetwork net;
  std::vector<Kind> source_kind;
  std::vector<Kind> sink_kind;
  std::vector<int> source_ref;  // vertex for vertex sources, edge otherwise
  std::vector<int> sink_ref;    // face for face sinks, edge for hearts
  std::vector<std::string> source_label;
  std::vector<std::string> sink_label;
  // Boring choice carried by a unit leaving a source through an arc.
  std::vector<std::optional<Shape>> arc_choice;
  std::vector<int> arc_edge;  // component whose choice the arc carries, or -1

  int total_supply() const;
  int total_demand() const;
  // Demand of the first sink of this kind and reference, or -1.
  int demand_of(Kind k, int ref = -1) const;
};

const char* to_string(NetworkSpec::Kind k);
std::string to_string(const NetworkSpec& n);

// Throws NegativeDemand when a sink demand comes out negative or fractional.
NetworkSpec build_network(const RNodeView& view, const Shape& s,
                          const std::vector<std::optional<Shape>>& chosen, const Precheck& pre);

// Whether a flow saturates every source and every sink.
bool accepts(const NetworkSpec& n, FlowResult* flow = nullptr);

FeasibleSet r_node_sources(const RNodeContext& ctx, std::ostream* trace = nullptr);
std::optional<std::vector<Shape>> r_node_sources_realize(const RNodeContext& ctx,
                                                         const Shape& target);
RNodeSubprocedure flow_subprocedure(std::ostream* trace = nullptr);

}  // namespace upt
