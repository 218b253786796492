// SPDX-License-Identifier: MIT
#include "upt/shapes.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace upt {

const char* to_string(Rho r) { return r == Rho::In ? "in" : "out"; }

std::string to_string(const Shape& s) {
  std::ostringstream os;
  os << '<' << s.tl << ',' << s.tr << ',' << s.lu << ',' << s.lv << ','
     << to_string(s.rlu) << ',' << to_string(s.rru) << ',' << to_string(s.rlv)
     << ',' << to_string(s.rrv) << '>';
  return os.str();
}

Shape parse_shape(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.size() < 2 || t.front() != '<' || t.back() != '>')
    throw ParseError(0, "shape must be enclosed in <...>: " + text);
  std::vector<std::string> parts;
  std::stringstream ss(t.substr(1, t.size() - 2));
  std::string tok;
  while (std::getline(ss, tok, ',')) parts.push_back(tok);
  if (parts.size() != 8) throw ParseError(0, "shape needs 8 fields: " + text);
  auto num = [&](const std::string& p) {
    try {
      size_t used = 0;
      int v = std::stoi(p, &used);
      if (used != p.size()) throw std::invalid_argument(p);
      return v;
    } catch (const std::exception&) {
      throw ParseError(0, "bad integer '" + p + "' in shape");
    }
  };
  auto rho = [&](const std::string& p) {
    if (p == "in") return Rho::In;
    if (p == "out") return Rho::Out;
    throw ParseError(0, "bad orientation '" + p + "' in shape");
  };
  return Shape{num(parts[0]), num(parts[1]), num(parts[2]), num(parts[3]),
               rho(parts[4]),  rho(parts[5]), rho(parts[6]), rho(parts[7])};
}

bool is_coherent(const Shape& s) {
  auto label = [](int l) { return l >= -1 && l <= 1; };
  if (!label(s.lu) || !label(s.lv)) return false;
  if (s.tl + s.tr + s.lu + s.lv != 2) return false;
  if ((s.rlu == s.rru) != (s.lu != 0)) return false;
  if ((s.rlv == s.rrv) != (s.lv != 0)) return false;
  bool odd_l = (s.tl % 2) != 0, odd_r = (s.tr % 2) != 0;
  if ((s.rlu == s.rlv) != odd_l) return false;
  if ((s.rru == s.rrv) != odd_r) return false;
  return s.h() >= 0 && s.h() <= 4;
}

bool is_thin(const Shape& s) {
  return s.tr == -s.tl && s.lu == 1 && s.lv == 1 && s.rlu == s.rru && s.rlv == s.rrv;
}

Shape mirror_shape(const Shape& s) {
  return Shape{s.tr, s.tl, s.lu, s.lv, s.rru, s.rlu, s.rrv, s.rlv};
}

Shape swap_poles(const Shape& s) {
  return Shape{s.tr, s.tl, s.lv, s.lu, s.rrv, s.rlv, s.rru, s.rlu};
}

Shape boring_shape(Boring b) {
  const Rho I = Rho::In, O = Rho::Out;
  switch (b) {
    case Boring::Sausage: return {0, 0, 1, 1, O, O, I, I};
    case Boring::InvertedSausage: return {0, 0, 1, 1, I, I, O, O};
    case Boring::RightWing: return {0, 1, 1, 0, O, O, I, O};
    case Boring::InvertedRightWing: return {1, 0, 0, 1, O, I, O, O};
    case Boring::LeftWing: return {1, 0, 1, 0, O, O, O, I};
    // Mirror of the inverted right wing; see the decisions ledger.
    case Boring::InvertedLeftWing: return {0, 1, 0, 1, I, O, O, O};
    case Boring::Hat: return {-1, 1, 1, 1, O, O, O, O};
    case Boring::InvertedHat: return {1, -1, 1, 1, O, O, O, O};
    case Boring::Heart: return {1, 1, 1, -1, O, O, O, O};
    case Boring::InvertedHeart: return {1, 1, -1, 1, O, O, O, O};
  }
  return {};
}

const char* to_string(Boring b) {
  switch (b) {
    case Boring::Sausage: return "sausage";
    case Boring::InvertedSausage: return "inverted_sausage";
    case Boring::RightWing: return "right_wing";
    case Boring::InvertedRightWing: return "inverted_right_wing";
    case Boring::LeftWing: return "left_wing";
    case Boring::InvertedLeftWing: return "inverted_left_wing";
    case Boring::Hat: return "hat";
    case Boring::InvertedHat: return "inverted_hat";
    case Boring::Heart: return "heart";
    case Boring::InvertedHeart: return "inverted_heart";
  }
  return "?";
}

const std::array<Boring, 10>& boring_catalog() {
  static const std::array<Boring, 10> all = {
      Boring::Sausage,   Boring::InvertedSausage,  Boring::RightWing,
      Boring::InvertedRightWing, Boring::LeftWing, Boring::InvertedLeftWing,
      Boring::Hat,       Boring::InvertedHat,      Boring::Heart,
      Boring::InvertedHeart};
  return all;
}

std::optional<Boring> boring_kind(const Shape& s) {
  for (Boring b : boring_catalog())
    if (boring_shape(b) == s) return b;
  return std::nullopt;
}

std::optional<Shape> decode_shape(int tau_l, int h, int lu, Rho rlu) {
  Shape s;
  s.tl = tau_l;
  s.tr = h - tau_l;
  s.lu = lu;
  s.lv = 2 - h - lu;
  s.rlu = rlu;
  s.rru = lu != 0 ? rlu : flip(rlu);
  s.rlv = (tau_l % 2 != 0) ? rlu : flip(rlu);
  s.rrv = s.lv != 0 ? s.rlv : flip(s.rlv);
  if (!is_coherent(s)) return std::nullopt;
  return s;
}

FeasibleSet::FeasibleSet(int tau_min, int tau_max)
    : tau_min_(tau_min), tau_max_(tau_max),
      cells_(std::max(0, tau_max - tau_min + 1), std::array<std::uint8_t, 5>{}) {}

bool FeasibleSet::in_range(const Shape& s) const {
  return s.tl >= tau_min_ && s.tl <= tau_max_ && s.h() >= 0 && s.h() <= 4;
}

bool FeasibleSet::insert(const Shape& s) {
  if (!in_range(s)) throw TurnOutOfRange(to_string(s));
  if (!is_coherent(s)) throw std::invalid_argument("incoherent shape " + to_string(s));
  auto& cell = cells_[s.tl - tau_min_][s.h()];
  std::uint8_t bit = static_cast<std::uint8_t>(1u << pair_index(s.lu, s.rlu));
  bool fresh = !(cell & bit);
  cell |= bit;
  return fresh;
}

bool FeasibleSet::contains(const Shape& s) const {
  if (!in_range(s) || !is_coherent(s)) return false;
  return cells_[s.tl - tau_min_][s.h()] & (1u << pair_index(s.lu, s.rlu));
}

std::vector<Shape> FeasibleSet::with_tau_l(int tau_l) const {
  std::vector<Shape> out;
  if (tau_l < tau_min_ || tau_l > tau_max_) return out;
  for (int h = 0; h <= 4; ++h) {
    std::uint8_t cell = cells_[tau_l - tau_min_][h];
    for (int lu = -1; lu <= 1; ++lu)
      for (Rho r : {Rho::In, Rho::Out})
        if (cell & (1u << pair_index(lu, r))) out.push_back(*decode_shape(tau_l, h, lu, r));
  }
  return out;
}

std::vector<Shape> FeasibleSet::with_tau_r(int tau_r) const {
  std::vector<Shape> out;
  for (int h = 0; h <= 4; ++h)
    for (const Shape& s : with_tau_l(h - tau_r))
      if (s.h() == h) out.push_back(s);
  return out;
}

std::vector<Shape> FeasibleSet::shapes() const {
  std::vector<Shape> out;
  for (int t = tau_min_; t <= tau_max_; ++t) {
    auto row = with_tau_l(t);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

std::size_t FeasibleSet::size() const {
  std::size_t n = 0;
  for (const auto& row : cells_)
    for (auto c : row) n += static_cast<std::size_t>(__builtin_popcount(c));
  return n;
}

int FeasibleSet::cell_size(int tau_l, int h) const {
  if (tau_l < tau_min_ || tau_l > tau_max_ || h < 0 || h > 4) return 0;
  return __builtin_popcount(cells_[tau_l - tau_min_][h]);
}

int FeasibleSet::max_cell_size() const {
  int best = 0;
  for (const auto& row : cells_)
    for (auto c : row) best = std::max(best, __builtin_popcount(c));
  return best;
}

std::pair<int, int> safe_tau_range(int n) { return {-(n + 1), n + 1}; }
std::pair<int, int> sources_tau_range(int sigma) { return {-2 * sigma - 1, 2 * sigma + 1}; }

FeasibleSet preferred_set(const FeasibleSet& f) {
  for (const Shape& s : f.shapes())
    if (!boring_kind(s)) throw NotBoring(to_string(s));
  auto has = [&](Boring b) { return f.contains(boring_shape(b)); };
  auto pair = [&](Boring a, Boring b) {
    FeasibleSet p(f.tau_min(), f.tau_max());
    p.insert(boring_shape(a));
    p.insert(boring_shape(b));
    return p;
  };
  if (has(Boring::Sausage) || has(Boring::InvertedSausage)) return f;
  if (has(Boring::LeftWing)) return pair(Boring::LeftWing, Boring::RightWing);
  if (has(Boring::InvertedLeftWing))
    return pair(Boring::InvertedLeftWing, Boring::InvertedRightWing);
  if (has(Boring::Hat)) return pair(Boring::Hat, Boring::InvertedHat);
  return f;
}

std::string to_string(const FeasibleSet& f) {
  std::string s = "{";
  bool first = true;
  for (const Shape& x : f.shapes()) {
    s += (first ? "" : ", ") + to_string(x);
    first = false;
  }
  return s + "}";
}

}  // namespace upt
