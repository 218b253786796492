// SPDX-License-Identifier: MIT
// A hand-built R-node configuration with known sink demands: nine skeleton
// vertices, six internal faces, one hat pair, one heart pair and the second
// pole carrying the large outer angle.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "upt/rnode_flow.hpp"

namespace upt::testing {

struct DemandExample {
  RNodeView view;
  Shape s;
  std::vector<std::optional<Shape>> chosen;
  Precheck pre;
  std::map<std::string, int> face;  // sorted vertex letters -> face id
};

inline DemandExample demand_example() {
  using Role = RNodeView::Role;
  const std::string names = "uabcdefgv";
  const std::map<char, std::pair<double, double>> at = {
      {'u', {0, 0}},  {'a', {-3, 3}}, {'b', {0, 3}}, {'c', {3, 2}}, {'d', {3, 5}},
      {'e', {0, 6}},  {'f', {-3, 7}}, {'g', {3, 8}}, {'v', {0, 10}}};
  const std::vector<std::string> edges = {"ua", "af", "fv", "uc", "cd", "dg", "gv", "ub",
                                          "ab", "bc", "be", "ef", "de", "eg", "uv"};
  auto id = [&](char c) { return static_cast<int>(names.find(c)); };
  auto edge = [&](const std::string& x) {
    return static_cast<int>(std::find(edges.begin(), edges.end(), x) - edges.begin());
  };

  DemandExample ex;
  RNodeView& w = ex.view;
  PlanarEmbedding& emb = w.emb;
  emb.n = static_cast<int>(names.size());
  for (const auto& x : edges) emb.ends.emplace_back(id(x[0]), id(x[1]));
  const int m = emb.m();
  w.parent = edge("uv");
  w.u = id('u');
  w.v = id('v');
  emb.outer_dart = 2 * w.parent;
  // Clockwise rotations from the coordinates; the parent edge leaves u
  // downwards and enters v from above.
  emb.rotation.resize(emb.n);
  for (int x = 0; x < emb.n; ++x) {
    std::vector<std::pair<double, int>> around;
    for (int e = 0; e < m; ++e) {
      auto [p, q] = emb.ends[e];
      if (p != x && q != x) continue;
      const int y = p == x ? q : p;
      double dx = at.at(names[y]).first - at.at(names[x]).first;
      double dy = at.at(names[y]).second - at.at(names[x]).second;
      if (e == w.parent) {
        dx = 0;
        dy = x == w.u ? -1 : 1;
      }
      around.emplace_back(-std::atan2(dy, dx), e);
    }
    std::sort(around.begin(), around.end());
    for (auto [angle, e] : around) emb.rotation[x].push_back(e);
  }
  w.faces = trace_faces(emb);
  for (int f = 0; f < w.faces.count(); ++f) {
    std::set<char> vs;
    for (int d : w.faces.walks[f]) vs.insert(names[emb.head(d)]);
    ex.face[std::string(vs.begin(), vs.end())] = f;
  }

  for (char c : names) {
    w.names.emplace_back(1, c);
    w.is_switch.push_back(std::string("adfgv").find(c) != std::string::npos);
  }
  w.classes.resize(m);
  w.sets.resize(m);
  w.child_switch.assign(m, {true, true});
  w.roles.assign(m, Role::Fixed);
  w.options.resize(m);
  w.wing_vertex.assign(m, -1);
  w.roles[w.parent] = Role::Parent;
  ex.chosen.assign(m, std::nullopt);

  const Rho O = Rho::Out, I = Rho::In;
  // Turns on the faces of darts 2e and 2e+1.
  auto make = [&](const std::string& x, int left, int right) {
    const int e = edge(x);
    Shape s{left, right, 1, 1, O, O, O, O};
    return std::make_pair(e, s);
  };
  // Turns t1 on face f1 and t2 on the other side.
  auto turns = [&](const std::string& x, const std::string& f1, int t1, int t2) {
    const int e = edge(x);
    const bool first = w.faces.face_of_dart[2 * e] == (f1 == "l" ? w.left_face()
                                                      : f1 == "r" ? w.right_face()
                                                                  : ex.face.at(f1));
    return make(x, first ? t1 : t2, first ? t2 : t1);
  };
  auto enumerated = [&](std::pair<int, Shape> p, bool interesting) {
    w.roles[p.first] = Role::Enumerated;
    w.classes[p.first].interesting = interesting;
    ex.chosen[p.first] = p.second;
  };
  auto fixed = [&](std::pair<int, Shape> p) { w.options[p.first] = {p.second, p.second}; };

  enumerated(turns("ua", "l", 3, 0), true);
  enumerated(turns("af", "l", 1, 1), true);
  enumerated(turns("fv", "l", 1, 1), true);
  enumerated(turns("ab", "abu", 1, 0), true);
  enumerated(turns("uc", "r", 0, 0), false);
  enumerated(turns("gv", "r", 0, 0), false);
  for (const char* x : {"ua", "fv", "uc", "gv"}) w.classes[edge(x)].extreme = true;
  for (const char* x : {"cd", "bc", "be", "ef"}) fixed(make(x, 0, 0));
  fixed(turns("de", "bcde", -1, 1));
  fixed(turns("eg", "deg", -1, 1));
  w.roles[edge("ub")] = Role::HatPair;
  w.options[edge("ub")] = {boring_shape(Boring::Hat), boring_shape(Boring::InvertedHat)};
  w.roles[edge("dg")] = Role::HeartPair;
  w.options[edge("dg")] = {boring_shape(Boring::Heart), boring_shape(Boring::InvertedHeart)};

  // Flat angles at the non-switch vertices: a-b meets u-b flat at b, and b-e
  // meets both e-f and d-e flat at e; every other boundary label is out.
  auto side_rho = [&](const std::string& x, char end, const std::string& f, Rho r) {
    const int e = edge(x);
    Shape& s = w.roles[e] == Role::Enumerated ? *ex.chosen[e] : w.options[e][0];
    const bool first_end = emb.ends[e].first == id(end);
    const bool left = w.faces.face_of_dart[2 * e] == ex.face.at(f);
    if (first_end) (left ? s.rlu : s.rru) = r;
    else (left ? s.rlv : s.rrv) = r;
    if (w.roles[e] != Role::Enumerated) w.options[e][1] = s;
  };
  side_rho("ab", 'b', "abu", I);
  side_rho("be", 'e', "abef", I);
  side_rho("be", 'e', "bcde", I);

  ex.s = Shape{1, 0, 0, 1, I, O, I, I};
  ex.pre.pass = true;
  ex.pre.available.assign(emb.n, false);
  for (char c : std::string("adfgv")) ex.pre.available[id(c)] = true;
  return ex;
}

}  // namespace upt::testing
