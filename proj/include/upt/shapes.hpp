// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upt/errors.hpp"

namespace upt {

enum class Rho : std::uint8_t { In = 0, Out = 1 };

inline Rho flip(Rho r) { return r == Rho::In ? Rho::Out : Rho::In; }
const char* to_string(Rho r);

// Shape description <tl, tr, lu, lv, rlu, rru, rlv, rrv>.
struct Shape {
  int tl = 0;
  int tr = 0;
  int lu = 1;
  int lv = 1;
  Rho rlu = Rho::Out;
  Rho rru = Rho::Out;
  Rho rlv = Rho::In;
  Rho rrv = Rho::In;

  auto operator<=>(const Shape&) const = default;
  int h() const { return tl + tr; }
};

std::string to_string(const Shape& s);
// Parses "<tl,tr,lu,lv,rlu,rru,rlv,rrv>"; throws ParseError(0, ...) on bad text.
Shape parse_shape(const std::string& text);

bool is_coherent(const Shape& s);
bool is_thin(const Shape& s);
// Left/right swap (the mirror embedding).
Shape mirror_shape(const Shape& s);
// Same embedding described with the poles exchanged.
Shape swap_poles(const Shape& s);

enum class Boring {
  Sausage,
  InvertedSausage,
  RightWing,
  InvertedRightWing,
  LeftWing,
  InvertedLeftWing,
  Hat,
  InvertedHat,
  Heart,
  InvertedHeart
};

Shape boring_shape(Boring b);
const char* to_string(Boring b);
const std::array<Boring, 10>& boring_catalog();
std::optional<Boring> boring_kind(const Shape& s);

// Compressed feasible-set matrix: rows are tau_l values in [tau_min, tau_max],
// columns are h = tau_l + tau_r in [0, 4], and each cell holds a bitmask over
// the six (lambda_u, rho_lu) pairs.
class FeasibleSet {
public:
  FeasibleSet() : FeasibleSet(0, -1) {}
  FeasibleSet(int tau_min, int tau_max);

  int tau_min() const { return tau_min_; }
  int tau_max() const { return tau_max_; }

  // Throws TurnOutOfRange when tau_l or h leaves the matrix, and
  // std::invalid_argument for an incoherent shape.
  bool insert(const Shape& s);
  bool contains(const Shape& s) const;
  bool in_range(const Shape& s) const;
  std::vector<Shape> shapes() const;  // ordered by (tau_l, h, lambda_u, rho_lu)
  std::vector<Shape> with_tau_l(int tau_l) const;
  std::vector<Shape> with_tau_r(int tau_r) const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  int cell_size(int tau_l, int h) const;
  int max_cell_size() const;

  bool operator==(const FeasibleSet& o) const { return shapes() == o.shapes(); }

private:
  static int pair_index(int lu, Rho rlu) { return (lu + 1) * 2 + static_cast<int>(rlu); }
  int tau_min_;
  int tau_max_;
  std::vector<std::array<std::uint8_t, 5>> cells_;
};

// Decodes the unique coherent shape for a cell entry, if any.
std::optional<Shape> decode_shape(int tau_l, int h, int lu, Rho rlu);

std::pair<int, int> safe_tau_range(int n);
std::pair<int, int> sources_tau_range(int sigma);

// Preferred set of a boring component; throws NotBoring.
FeasibleSet preferred_set(const FeasibleSet& f);

std::string to_string(const FeasibleSet& f);

}  // namespace upt
