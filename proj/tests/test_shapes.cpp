// SPDX-License-Identifier: MIT
#include "doctest.h"
#include "upt/shapes.hpp"

using namespace upt;

TEST_CASE("is_coherent examples") {
  CHECK(is_coherent(parse_shape("<0,0,1,1,out,out,in,in>")));
  CHECK(is_coherent(parse_shape("<3,0,0,-1,out,in,out,out>")));
  CHECK_FALSE(is_coherent(parse_shape("<0,0,1,0,out,out,in,out>")));
}

TEST_CASE("boring catalog is coherent and closed under symmetry") {
  for (Boring b : boring_catalog()) {
    Shape s = boring_shape(b);
    CHECK_MESSAGE(is_coherent(s), to_string(b));
    CHECK(boring_kind(mirror_shape(s)).has_value());
    CHECK(boring_kind(swap_poles(s)).has_value());
  }
  CHECK(swap_poles(boring_shape(Boring::LeftWing)) == boring_shape(Boring::InvertedLeftWing));
  CHECK(swap_poles(boring_shape(Boring::RightWing)) == boring_shape(Boring::InvertedRightWing));
  CHECK(mirror_shape(boring_shape(Boring::Hat)) == boring_shape(Boring::InvertedHat));
}

TEST_CASE("shape text round trip") {
  Shape s = boring_shape(Boring::InvertedHeart);
  CHECK(parse_shape(to_string(s)) == s);
  CHECK(to_string(s) == "<1,1,-1,1,out,out,out,out>");
  CHECK_THROWS_AS(parse_shape("<1,2,3>"), ParseError);
  CHECK_THROWS_AS(parse_shape("<0,0,1,1,up,out,in,in>"), ParseError);
}

TEST_CASE("feasible set insert, contains and iterate") {
  FeasibleSet f(-1, 1);
  CHECK(f.insert(boring_shape(Boring::Sausage)));
  CHECK_FALSE(f.insert(boring_shape(Boring::Sausage)));
  CHECK(f.size() == 1);
  CHECK(f.contains(boring_shape(Boring::Sausage)));
  CHECK_FALSE(f.contains(boring_shape(Boring::InvertedSausage)));
  Shape low = parse_shape("<-2,2,1,1,out,out,in,in>");
  CHECK_THROWS_AS(f.insert(low), TurnOutOfRange);
}

TEST_CASE("decode inverts encode on every coherent shape in range") {
  FeasibleSet all(-5, 5);
  int coherent = 0;
  for (int tl = -5; tl <= 5; ++tl)
    for (int h = 0; h <= 4; ++h) {
      int cell = 0;
      for (int lu = -1; lu <= 1; ++lu)
        for (Rho r : {Rho::In, Rho::Out}) {
          auto s = decode_shape(tl, h, lu, r);
          if (!s) continue;
          ++cell;
          ++coherent;
          CHECK(s->tl == tl);
          CHECK(s->h() == h);
          CHECK(all.insert(*s));
        }
      CHECK(cell <= 6);
    }
  CHECK(all.size() == static_cast<size_t>(coherent));
  // Brute force over raw tuples finds exactly the decoded ones.
  int raw = 0;
  for (int tl = -5; tl <= 5; ++tl)
    for (int tr = -tl; tr <= -tl + 4; ++tr)
      for (int lu = -1; lu <= 1; ++lu)
        for (int lv = -1; lv <= 1; ++lv)
          for (int bits = 0; bits < 16; ++bits) {
            Shape s{tl, tr, lu, lv, Rho(bits & 1), Rho(bits >> 1 & 1), Rho(bits >> 2 & 1),
                    Rho(bits >> 3 & 1)};
            if (!is_coherent(s)) continue;
            ++raw;
            CHECK(all.contains(s));
          }
  CHECK(raw == coherent);
  for (int tl = -5; tl <= 5; ++tl) CHECK(all.with_tau_l(tl).size() <= 18);
}

TEST_CASE("thin shapes") {
  CHECK(is_thin(boring_shape(Boring::Sausage)));
  CHECK(is_thin(boring_shape(Boring::Hat)));
  CHECK_FALSE(is_thin(boring_shape(Boring::Heart)));
}

TEST_CASE("preferred sets") {
  auto set_of = [](std::initializer_list<Boring> bs) {
    FeasibleSet f(-1, 1);
    for (Boring b : bs) f.insert(boring_shape(b));
    return f;
  };
  CHECK(preferred_set(set_of({Boring::Sausage})) == set_of({Boring::Sausage}));
  CHECK(preferred_set(set_of({Boring::LeftWing, Boring::RightWing, Boring::Heart})) ==
        set_of({Boring::LeftWing, Boring::RightWing}));
  CHECK(preferred_set(set_of({Boring::Heart, Boring::InvertedHeart})) ==
        set_of({Boring::Heart, Boring::InvertedHeart}));
  CHECK(preferred_set(set_of({Boring::Hat, Boring::InvertedHat, Boring::InvertedHeart})) ==
        set_of({Boring::Hat, Boring::InvertedHat}));
  FeasibleSet odd(-3, 3);
  odd.insert(parse_shape("<1,0,0,1,out,in,out,out>"));
  odd.insert(parse_shape("<2,0,0,0,out,in,in,out>"));
  CHECK_THROWS_AS(preferred_set(odd), NotBoring);
}

TEST_CASE("turn ranges") {
  CHECK(sources_tau_range(0) == std::make_pair(-1, 1));
  CHECK(sources_tau_range(1) == std::make_pair(-3, 3));
  CHECK(sources_tau_range(3) == std::make_pair(-7, 7));
  CHECK(safe_tau_range(4) == std::make_pair(-5, 5));
}
