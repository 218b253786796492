// SPDX-License-Identifier: MIT
#pragma once

#include "upt/framework.hpp"

namespace upt::detail {

inline int lambda_at(const Shape& s, int w) { return w == 0 ? s.lu : s.lv; }
inline Rho rho_left(const Shape& s, int w) { return w == 0 ? s.rlu : s.rlv; }
inline Rho rho_right(const Shape& s, int w) { return w == 0 ? s.rru : s.rrv; }

// Large and flat angles collected at the two poles of a parallel composition.
// A switch pole needs exactly one large angle; a non-switch pole none and
// exactly two flat ones.
struct PoleTally {
  bool is_switch[2];
  int large[2] = {0, 0};
  int flat[2] = {0, 0};

  explicit PoleTally(PoleKinds p) : is_switch{p.u_switch, p.v_switch} {}

  // Angles a component keeps inside itself at its pole, given its outer label.
  bool add_component(const Shape& s) {
    for (int w = 0; w < 2; ++w) {
      int l = lambda_at(s, w);
      if (is_switch[w]) {
        if (l == 0) return false;
        if (l == -1) ++large[w];
      } else if (l == 0) {
        ++flat[w];
      } else if (l == -1) {
        flat[w] += 2;
      }
    }
    return feasible();
  }

  void add_label(int w, int a) {
    if (a == 1) ++large[w];
    if (a == 0) ++flat[w];
  }

  bool feasible() const {
    for (int w = 0; w < 2; ++w) {
      if (is_switch[w] ? large[w] > 1 || flat[w] > 0 : large[w] > 0 || flat[w] > 2) return false;
    }
    return true;
  }

  bool complete() const {
    for (int w = 0; w < 2; ++w) {
      if (is_switch[w] ? large[w] != 1 || flat[w] != 0 : large[w] != 0 || flat[w] != 2)
        return false;
    }
    return true;
  }
};

// Labels a gap between two boundary edges at one pole may take.
inline std::vector<int> gap_labels(Rho before, Rho after) {
  if (before != after) return {0};
  return {-1, 1};
}

// Whether a child with this shape must be non-switch at a pole, given the
// kind of the pole in the composition.
inline bool needs_nonswitch(const Shape& s, int w, bool pole_switch) {
  return !pole_switch && lambda_at(s, w) == -1;
}

}  // namespace upt::detail
