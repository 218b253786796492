// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "upt/rnode_flow.hpp"

namespace upt::detail {

// Boundary labels of a component at the angle a dart enters or leaves.
inline Rho entering_rho(const Shape& s, int d) { return d & 1 ? s.rru : s.rlv; }
inline Rho leaving_rho(const Shape& s, int d) { return d & 1 ? s.rrv : s.rlu; }
inline int lambda_end(const Shape& s, int end) { return end == 0 ? s.lu : s.lv; }

// One combination of component shapes. Pairs keep a representative shape;
// wing pairs whose choice is forced by their neighbours become fixed.
struct Config {
  std::vector<RNodeView::Role> role;
  std::vector<Shape> shape;
  std::vector<std::array<int, 2>> wing_left;  // per option: left face turn with its angle
  std::vector<std::array<int, 2>> wing_right;
  std::vector<char> skip;  // per dart: its angle is counted by a wing pair
};

Config resolve(const RNodeView& view, const std::vector<std::optional<Shape>>& chosen);

}  // namespace upt::detail
