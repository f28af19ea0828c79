#include <stdexcept>
#include <random>
#include <set>

#include "doctest.h"
#include "f2curves/orbit.hpp"
#include "f2curves/polyrep.hpp"

using namespace f2c;

namespace {

PolyMask random_form(std::mt19937& rng, int d) {
  const auto full = MonomialBasis::of(d).full_mask();
  PolyMask f{d, 0};
  while (f.bits == 0) f.bits = static_cast<std::uint32_t>(rng()) & full;
  return f;
}

Point random_point(std::mt19937& rng, const FieldTable& F) {
  return {static_cast<Elem>(rng() % F.order()), static_cast<Elem>(rng() % F.order()),
          static_cast<Elem>(rng() % F.order())};
}

// direct evaluation, monomial by monomial
Elem naive_eval(const PolyMask& f, const FieldTable& F, const Point& p) {
  Elem acc = 0;
  for (const auto& mono : decode(f))
    acc ^= F.mul(F.mul(F.pow(p.x, mono.x), F.pow(p.y, mono.y)), F.pow(p.z, mono.z));
  return acc;
}

}  // namespace

TEST_CASE("basis order and size") {
  for (int d = 0; d <= kMaxDegree; ++d) {
    const auto& B = MonomialBasis::of(d);
    CHECK(B.size() == monomial_count(d));
    for (int t = 0; t < B.size(); ++t) {
      CHECK(B[t].degree() == d);
      CHECK(B.index_of(B[t]) == t);
      if (t > 0) CHECK(B[t - 1] > B[t]);
    }
  }
  CHECK(MonomialBasis::of(6).size() == 28);
  CHECK(MonomialBasis::of(2)[1] == Monomial{1, 1, 0});
}

TEST_CASE("encode and decode are inverse") {
  for (int d = 1; d <= 3; ++d)
    for (std::uint32_t bits = 1; bits <= MonomialBasis::of(d).full_mask(); ++bits) {
      const PolyMask f{d, bits};
      const auto monos = decode(f);
      REQUIRE(static_cast<int>(monos.size()) == f.terms());
      REQUIRE(encode(monos) == f);
    }
  std::mt19937 rng(3);
  for (int s = 0; s < 2000; ++s) {
    const auto f = random_form(rng, 1 + s % 6);
    REQUIRE(encode(f.degree, decode(f)) == f);
    REQUIRE(parse_poly(to_text(f)) == f);
    REQUIRE(parse_hex(to_hex(f)) == f);
    REQUIRE(parse_any(to_hex(f)) == f);
  }
}

TEST_CASE("encode rejects bad monomial lists") {
  const Monomial mixed[] = {{2, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(encode(mixed), std::invalid_argument);
  const Monomial dup[] = {{1, 1, 0}, {1, 1, 0}};
  CHECK_THROWS_AS(encode(dup), std::invalid_argument);
  const Monomial neg[] = {{-1, 2, 1}};
  CHECK_THROWS_AS(encode(neg), std::invalid_argument);
}

TEST_CASE("parser") {
  CHECK(to_text(parse_poly("(x+y)^2")) == "x^2 + y^2");
  CHECK(parse_poly("x y z + x^3 + x^3 + z^3") == parse_poly("x*y*z + z^3"));
  CHECK(to_hex(parse_poly("x^6")) == "d6:0x00000001");
  CHECK(to_text(parse_hex("d5:0x00008243")) == "x^5 + x^4*y + x^2*y^3 + x^2*z^3 + y^5");
  CHECK_THROWS(parse_poly("x^2 + y"));
  CHECK_THROWS(parse_poly("x + x"));
  CHECK_THROWS(parse_poly("x^7"));
  CHECK_THROWS(parse_poly("x^2 + w^2"));
  CHECK_THROWS(parse_hex("d4:0x10000"));
  CHECK_THROWS(parse_hex("d9:0x1"));
}

TEST_CASE("evaluation matches a monomial-by-monomial oracle") {
  std::mt19937 rng(5);
  for (int m : {1, 3, 8, 11}) {
    const FieldTable& F = field(m);
    for (int s = 0; s < 500; ++s) {
      const auto f = random_form(rng, 1 + s % 6);
      const auto p = random_point(rng, F);
      REQUIRE(evaluate(f, F, p) == naive_eval(f, F, p));
    }
  }
}

TEST_CASE("Euler identity") {
  std::mt19937 rng(13);
  for (int s = 0; s < 3000; ++s) {
    const int d = 1 + s % 6;
    const auto f = random_form(rng, d);
    const auto df = partials(f);
    PolyMask sum{d, 0};
    for (int v = 0; v < 3; ++v)
      if (d > 1 && !df[v].is_zero()) sum.bits ^= multiply(variable(v), df[v]).bits;
      else if (d == 1 && !df[v].is_zero()) sum.bits ^= variable(v).bits;
    REQUIRE(sum.bits == (d % 2 ? f.bits : 0u));
  }
}

TEST_CASE("products evaluate to products") {
  std::mt19937 rng(17);
  const FieldTable& F = field(7);
  for (int s = 0; s < 1000; ++s) {
    const int da = 1 + s % 3, db = 1 + (s / 3) % 3;
    const auto a = random_form(rng, da), b = random_form(rng, db);
    const auto ab = multiply(a, b);
    CHECK(ab.degree == da + db);
    const auto p = random_point(rng, F);
    REQUIRE(evaluate(ab, F, p) == F.mul(evaluate(a, F, p), evaluate(b, F, p)));
  }
}

TEST_CASE("substitution is compatible with evaluation and composition") {
  std::mt19937 rng(19);
  const auto& G = gl3();
  const FieldTable& F = field(5);
  for (int s = 0; s < 2000; ++s) {
    const auto f = random_form(rng, 1 + s % 6);
    const auto A = G[rng() % G.size()], B = G[rng() % G.size()];
    const auto fa = substitute(f, A);
    CHECK(fa.degree == f.degree);
    const auto p = random_point(rng, F);
    REQUIRE(evaluate(fa, F, p) == evaluate(f, F, apply(p, A)));
    REQUIRE(substitute(fa, B) == substitute(f, B * A));
    REQUIRE(SubstitutionTable::of(f.degree).apply(A, f.bits) == fa.bits);
  }
  CHECK(substitute(parse_poly("x^2*y"), BitMatrix3::identity()) == parse_poly("x^2*y"));
  CHECK_THROWS_AS(substitute(parse_poly("x"), BitMatrix3{0}), std::invalid_argument);
}

TEST_CASE("trivial reducibility") {
  CHECK(is_trivially_reducible(parse_poly("x^2 + y^2")));
  CHECK(is_trivially_reducible(parse_poly("x*y^2 + x*z^2")));
  CHECK(is_trivially_reducible(parse_poly("z^4 + y*z^3")));
  CHECK_FALSE(is_trivially_reducible(parse_poly("x^2 + x*y + y^2")));
  CHECK_FALSE(is_trivially_reducible(parse_poly("x^5 + y^5 + z^5")));
  // (x + y) divides this but it is not a "trivial" factor
  CHECK_FALSE(is_trivially_reducible(parse_poly("x^2 + y^2 + x*z + y*z")));
}
