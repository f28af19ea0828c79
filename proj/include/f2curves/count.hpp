#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "f2curves/gf2m.hpp"
#include "f2curves/polyrep.hpp"

namespace f2c {

/// Rational points of one curve over one field.
struct PointCount {
  std::uint32_t q = 0;
  std::uint64_t total = 0;
  std::uint64_t smooth = 0;
  /// Normalized representatives, in projective_points() order.
  std::vector<Point> singular_points;

  friend bool operator==(const PointCount&, const PointCount&) = default;
};

/// Normalized representatives of P^2(F_q): (1, y, z) for all y, z, then
/// (0, 1, z) for all z, then (0, 0, 1). Exactly q^2 + q + 1 points.
std::vector<Point> projective_points(const FieldTable& F);

template <class Fn>
void for_each_projective_point(const FieldTable& F, Fn&& fn) {
  const std::uint32_t q = F.order();
  for (std::uint32_t y = 0; y < q; ++y)
    for (std::uint32_t z = 0; z < q; ++z) fn(Point{1, static_cast<Elem>(y), static_cast<Elem>(z)});
  for (std::uint32_t z = 0; z < q; ++z) fn(Point{0, 1, static_cast<Elem>(z)});
  fn(Point{0, 0, 1});
}

/// Scale so that the first nonzero coordinate is 1.
Point normalize(const FieldTable& F, const Point& p);

/// (f_x(p), f_y(p), f_z(p)).
std::array<Elem, 3> gradient(const PolyMask& f, const FieldTable& F, const Point& p);

/// All three partials vanish at p. Stops at the first nonzero partial.
bool gradient_vanishes(const PolyMask& f, const FieldTable& F, const Point& p);

/// Counts one curve.
PointCount count_points(const PolyMask& f, const FieldTable& F);

/// Counts many curves. Per row of the chart x = 1 the values of every basis
/// monomial are tabulated once, and each curve then costs one table lookup
/// and exclusive-or per monomial per point. Work is split over curves into
/// `jobs` threads; the result order matches `curves`.
std::vector<PointCount> count_points_batch(std::span<const PolyMask> curves, const FieldTable& F,
                                           unsigned jobs = 1);

}  // namespace f2c
