#include <stdexcept>
#include <random>
#include <set>

#include "doctest.h"
#include "f2curves/count.hpp"

using namespace f2c;

namespace {

PointCount naive_count(const PolyMask& f, const FieldTable& F) {
  PointCount c;
  c.q = F.order();
  for (const auto& p : projective_points(F)) {
    if (evaluate(f, F, p) != 0) continue;
    ++c.total;
    const auto df = partials(f);
    bool singular = true;
    for (const auto& d : df)
      if (!d.is_zero() && evaluate(d, F, p) != 0) singular = false;
    if (singular) c.singular_points.push_back(p);
    else ++c.smooth;
  }
  return c;
}

}  // namespace

TEST_CASE("projective plane enumeration") {
  for (int m = 1; m <= 5; ++m) {
    const FieldTable& F = field(m);
    const auto pts = projective_points(F);
    const std::uint64_t q = F.order();
    CHECK(pts.size() == q * q + q + 1);
    std::set<Point> unique(pts.begin(), pts.end());
    CHECK(unique.size() == pts.size());
    for (const auto& p : pts) REQUIRE(normalize(F, p) == p);
    std::size_t visited = 0;
    for_each_projective_point(F, [&](const Point& p) { REQUIRE(p == pts[visited++]); });
    CHECK(visited == pts.size());
  }
  const FieldTable& F = field(3);
  CHECK(normalize(F, Point{0, 3, 5}) == Point{0, 1, F.div(5, 3)});
}

TEST_CASE("counts match a naive oracle") {
  std::mt19937 rng(31);
  for (int m : {1, 2, 3, 4, 5}) {
    const FieldTable& F = field(m);
    std::vector<PolyMask> curves;
    for (int s = 0; s < 60; ++s) {
      const int d = 1 + s % 6;
      curves.push_back({d, (static_cast<std::uint32_t>(rng()) & MonomialBasis::of(d).full_mask()) | 1u});
    }
    const auto batch = count_points_batch(curves, F, 1);
    const auto threaded = count_points_batch(curves, F, 4);
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const auto want = naive_count(curves[i], F);
      const auto one = count_points(curves[i], F);
      REQUIRE(one == want);
      REQUIRE(batch[i] == want);
      REQUIRE(threaded[i] == want);
    }
  }
}

TEST_CASE("batch counting over large fields is thread-count independent") {
  std::mt19937 rng(37);
  std::vector<PolyMask> curves;
  for (int s = 0; s < 12; ++s)
    curves.push_back({6, (static_cast<std::uint32_t>(rng()) & MonomialBasis::of(6).full_mask()) | 1u});
  const FieldTable& F = field(8);
  CHECK(count_points_batch(curves, F, 1) == count_points_batch(curves, F, 3));
}

TEST_CASE("known counts") {
  // Hermitian curve over F16 is maximal: 16 + 1 + 6 * 8
  const auto h = count_points(parse_poly("x^5 + y^5 + z^5"), field(4));
  CHECK(h.smooth == 65);
  CHECK(h.singular_points.empty());
  // Klein quartic over F8
  CHECK(count_points(parse_poly("x^3*y + y^3*z + z^3*x"), field(3)).smooth == 24);
  const auto cusp = count_points(parse_poly("y^2*z + x^3"), field(2));
  CHECK(cusp.total == 5);
  CHECK(cusp.singular_points == std::vector<Point>{{0, 0, 1}});
}

TEST_CASE("gradient helpers") {
  const FieldTable& F = field(3);
  const auto f = parse_poly("x^3 + y^2*z + x*y*z");
  const Point p{3, 5, 7};
  const auto g = gradient(f, F, p);
  const auto df = partials(f);
  for (int v = 0; v < 3; ++v) CHECK(g[v] == evaluate(df[v], F, p));
  CHECK(gradient_vanishes(parse_poly("y^2*z + x^3"), field(1), Point{0, 0, 1}));
  CHECK_FALSE(gradient_vanishes(parse_poly("y^2*z + x^3"), field(1), Point{1, 1, 1}));
}
