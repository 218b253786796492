// SPDX-License-Identifier: MIT
#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "pole_tally.hpp"
#include "upt/framework.hpp"

namespace upt {

using detail::gap_labels;
using detail::PoleTally;
using detail::rho_left;
using detail::rho_right;

const char* to_string(TauPolicy p) { return p == TauPolicy::Safe ? "safe" : "sources"; }

TauRange tau_range(TauPolicy p, const NodeInfo& info) {
  auto r = p == TauPolicy::Safe ? safe_tau_range(info.vertices) : sources_tau_range(info.sigma);
  return {r.first, r.second};
}

FeasibleSet q_node_feasible(const Edge& e, int u, int v, TauRange r) {
  FeasibleSet f = r.empty_set();
  if (e.tail == u && e.head == v)
    f.insert(boring_shape(Boring::Sausage));
  else if (e.tail == v && e.head == u)
    f.insert(boring_shape(Boring::InvertedSausage));
  else
    throw std::invalid_argument("edge does not join the poles");
  return f;
}

FeasibleSet s_node_feasible(const FeasibleSet& f1, const FeasibleSet& f2, TauRange r) {
  FeasibleSet out = r.empty_set();
  if (f1.empty() || f2.empty()) return out;
  const auto b = f2.shapes();
  for (const Shape& s1 : f1.shapes())
    for (const Shape& s2 : b)
      for (int ll : gap_labels(s1.rlv, s2.rlu))
        for (int lr : gap_labels(s1.rrv, s2.rru)) {
          if (ll + lr >= 2) continue;
          Shape s{s1.tl + s2.tl + ll, s1.tr + s2.tr + lr, s1.lu, s2.lv,
                  s1.rlu,             s1.rru,             s2.rlv, s2.rrv};
          if (is_coherent(s) && r.admits(s)) out.insert(s);
        }
  return out;
}

ShapeSequence ShapeSequence::reduced() const {
  using M = Mark;
  ShapeSequence out;
  for (const Element& e : elements) {
    if (e.mark != M::One && !is_thin(e.shape))
      throw NotThinRepeat("repeated shape " + upt::to_string(e.shape) + " is not thin");
    if (!out.elements.empty() && out.elements.back().shape == e.shape) {
      Element& last = out.elements.back();
      if (!is_thin(e.shape))
        throw NotThinRepeat("repeated shape " + upt::to_string(e.shape) + " is not thin");
      // Merged runs need at least one copy unless both sides are optional.
      bool some = last.mark != M::Star || e.mark != M::Star;
      last.mark = some ? M::Plus : M::Star;
      continue;
    }
    out.elements.push_back(e);
  }
  return out;
}

std::string to_string(const ShapeSequence& s) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < s.elements.size(); ++i) {
    const auto& e = s.elements[i];
    os << (i ? ", " : "") << to_string(e.shape);
    if (e.mark == ShapeSequence::Mark::Plus) os << "+";
    if (e.mark == ShapeSequence::Mark::Star) os << "*";
  }
  os << "]";
  return os.str();
}

namespace {

// Shapes of one concrete sequence: every element present at least once.
void check_concrete(const std::vector<Shape>& seq, PoleKinds poles, std::set<Shape>& out) {
  const int r = static_cast<int>(seq.size());
  if (r == 0) return;
  PoleTally base(poles);
  for (const Shape& s : seq)
    if (!base.add_component(s)) return;
  std::function<void(int, PoleTally)> rec = [&](int i, PoleTally t) {
    if (i + 1 < r) {
      const Shape& a = seq[i];
      const Shape& b = seq[i + 1];
      for (int au : gap_labels(rho_right(a, 0), rho_left(b, 0)))
        for (int av : gap_labels(rho_right(a, 1), rho_left(b, 1))) {
          if (a.tr + b.tl + au + av != -2) continue;
          PoleTally n = t;
          n.add_label(0, au);
          n.add_label(1, av);
          if (n.feasible()) rec(i + 1, n);
        }
      return;
    }
    const Shape& f = seq.front();
    const Shape& l = seq.back();
    for (int au : gap_labels(rho_right(l, 0), rho_left(f, 0)))
      for (int av : gap_labels(rho_right(l, 1), rho_left(f, 1))) {
        if (f.tl + l.tr + au + av != 2) continue;
        PoleTally n = t;
        n.add_label(0, au);
        n.add_label(1, av);
        if (!n.complete()) continue;
        Shape s{f.tl, l.tr, au, av, f.rlu, l.rru, f.rlv, l.rrv};
        if (is_coherent(s)) out.insert(s);
      }
  };
  rec(0, base);
}

}  // namespace

std::vector<Shape> shape_sequence_check(const ShapeSequence& s, PoleKinds poles) {
  using M = ShapeSequence::Mark;
  ShapeSequence red = s.reduced();
  std::vector<int> stars;
  for (int i = 0; i < static_cast<int>(red.elements.size()); ++i)
    if (red.elements[i].mark == M::Star) stars.push_back(i);
  std::set<Shape> out;
  for (unsigned mask = 0; mask < (1u << stars.size()); ++mask) {
    std::vector<Shape> seq;
    for (int i = 0; i < static_cast<int>(red.elements.size()); ++i) {
      auto it = std::find(stars.begin(), stars.end(), i);
      if (it != stars.end() && !(mask >> (it - stars.begin()) & 1)) continue;
      const Shape& x = red.elements[i].shape;
      // Runs collapse to one copy: thin repeats leave every label unchanged.
      if (seq.empty() || seq.back() != x || !is_thin(x)) seq.push_back(x);
    }
    check_concrete(seq, poles, out);
  }
  return {out.begin(), out.end()};
}

std::vector<std::pair<ShapeSequence, std::vector<Shape>>> shape_sequence_extend(
    const ShapeSequence& seq, const Shape& s, PoleKinds poles) {
  using M = ShapeSequence::Mark;
  std::vector<std::pair<ShapeSequence, std::vector<Shape>>> out;
  std::set<std::vector<std::pair<Shape, int>>> seen;
  auto key = [](const ShapeSequence& q) {
    std::vector<std::pair<Shape, int>> k;
    for (const auto& e : q.elements) k.emplace_back(e.shape, static_cast<int>(e.mark));
    return k;
  };
  const int n = static_cast<int>(seq.elements.size());
  for (int pos = 0; pos <= n; ++pos) {
    ShapeSequence next = seq;
    next.elements.insert(next.elements.begin() + pos, {s, M::One});
    ShapeSequence red;
    try {
      red = next.reduced();
    } catch (const NotThinRepeat&) {
      continue;
    }
    // Next to its own run a thin copy is absorbed by the reduction.
    if (!seen.insert(key(red)).second) continue;
    auto shapes = shape_sequence_check(red, poles);
    if (!shapes.empty()) out.emplace_back(red, std::move(shapes));
  }
  return out;
}

}  // namespace upt
