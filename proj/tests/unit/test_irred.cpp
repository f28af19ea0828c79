#include <stdexcept>
#include <random>
#include <set>

#include "doctest.h"
#include "f2curves/count.hpp"
#include "f2curves/irred.hpp"

using namespace f2c;

namespace {

// every mask of degree d that is a product of two forms of positive degree
std::set<std::uint32_t> reducible_masks(int d) {
  std::set<std::uint32_t> out;
  for (int a = 1; a <= d / 2; ++a) {
    const int b = d - a;
    for (std::uint32_t x = 1; x <= MonomialBasis::of(a).full_mask(); ++x)
      for (std::uint32_t y = 1; y <= MonomialBasis::of(b).full_mask(); ++y)
        out.insert(multiply(PolyMask{a, x}, PolyMask{b, y}).bits);
  }
  return out;
}

}  // namespace

TEST_CASE("trial division matches product enumeration for d <= 4 over F2") {
  for (int d = 1; d <= 4; ++d) {
    const auto reducible = reducible_masks(d);
    for (std::uint32_t bits = 1; bits <= MonomialBasis::of(d).full_mask(); ++bits) {
      const PolyMask f{d, bits};
      const auto div = find_divisor(f, 1);
      REQUIRE(div.has_value() == (reducible.count(bits) == 1));
      if (div) {
        REQUIRE(div->k == 1);
        REQUIRE(divides(div->g, lift(f), field(1)));
      }
    }
  }
}

TEST_CASE("divisibility of masks") {
  CHECK(divides(parse_poly("x + y"), parse_poly("x^2 + y^2")));
  CHECK(divides(parse_poly("x^2 + x*y + y^2"), parse_poly("x^3 + y^3")));
  CHECK_FALSE(divides(parse_poly("x + z"), parse_poly("x^3 + y^3")));
  CHECK_THROWS_AS(divides(parse_poly("x^3 + y^3"), parse_poly("x^3 + y^3")), std::invalid_argument);
}

TEST_CASE("irreducibility over F4 and F8 against exhaustive search") {
  for (int k : {2, 3}) {
    const FieldTable& F = field(k);
    const int max_d = k == 2 ? 4 : 3;
    for (int d = 2; d <= max_d; ++d)
      for (std::uint32_t bits = 1; bits <= MonomialBasis::of(d).full_mask(); ++bits) {
        const PolyMask f{d, bits};
        if (!is_irreducible(f, 1)) continue;
        const auto oracle = find_divisor_exhaustive(lift(f), F);
        const auto div = find_divisor(f, k);
        REQUIRE(div.has_value() == oracle.has_value());
        if (div) {
          REQUIRE(div->k == k);
          REQUIRE(divides(div->g, lift(f), F));
        }
      }
  }
  std::mt19937 rng(43);
  int checked = 0;
  while (checked < 6) {
    const PolyMask f{6, (static_cast<std::uint32_t>(rng()) & MonomialBasis::of(6).full_mask()) | 1u};
    if (is_trivially_reducible(f) || !is_irreducible(f, 1)) continue;
    const auto div = find_divisor(f, 3);
    if (div) CHECK(divides(div->g, lift(f), field(3)));
    ++checked;
  }
}

TEST_CASE("split forms produce witnesses") {
  // norm of x + w y + w^2 z from F4
  const auto n = parse_poly("x^2 + y^2 + z^2 + x*y + y*z + x*z");
  CHECK(is_irreducible(n, 1));
  const auto over4 = find_divisor(n, 2);
  REQUIRE(over4);
  CHECK(over4->g.degree == 1);
  CHECK(divides(over4->g, lift(n), field(2)));
  // norm of a linear form from F8
  const auto cubic = parse_poly("x^3 + y^3 + z^3 + x^2*y + y^2*z + x*z^2 + x*y*z");
  if (is_irreducible(cubic, 1)) {
    const auto oracle = find_divisor_exhaustive(lift(cubic), field(3));
    CHECK(find_divisor(cubic, 3).has_value() == oracle.has_value());
  }
}

TEST_CASE("extension polynomial helpers") {
  const FieldTable& F = field(2);
  const ExtPoly a{1, {1, 2, 0}};  // x + g y
  const ExtPoly b{1, {1, 3, 0}};  // x + g^2 y
  const auto ab = multiply(a, b, F);
  CHECK(ab == lift(parse_poly("x^2 + x*y + y^2")));
  CHECK(to_text(a, F) == "x + (g^1)*y");
  CHECK(a.leading_index() == 0);
  CHECK(ExtPoly{1, {0, 0, 0}}.is_zero());
}

TEST_CASE("simple points and absolute irreducibility") {
  const auto hermitian = parse_poly("x^5 + y^5 + z^5");
  const auto s = certify_absolute(hermitian);
  CHECK(s.irreducible_over_f2);
  CHECK(s.absolute == Absolute::yes);
  CHECK(s.certificate_field == 1);
  REQUIRE(s.simple_point);
  CHECK(evaluate(hermitian, field(1), s.simple_point->point) == 0);
  CHECK_FALSE(gradient_vanishes(hermitian, field(1), s.simple_point->point));

  const auto split = certify_absolute(parse_poly("x^2 + x*y + y^2"));
  CHECK(split.absolute == Absolute::reducible);
  REQUIRE(split.witness);
  CHECK(split.witness->k == 2);

  const auto f2_split = certify_absolute(parse_poly("x^2 + y^2 + x*z + y*z"));
  CHECK_FALSE(f2_split.irreducible_over_f2);
  CHECK(f2_split.absolute == Absolute::reducible);

  CHECK(to_string(Absolute::yes) == "yes");
  CHECK(to_string(Absolute::unknown) == "unknown");

  // the singular point (0:0:1) is its only F2-point
  const auto sp = find_simple_point(parse_poly("x^2 + x*y + y^2"), 3);
  REQUIRE(sp);
  CHECK(sp->k == 2);
}
