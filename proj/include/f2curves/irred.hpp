#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "f2curves/gf2m.hpp"
#include "f2curves/polyrep.hpp"

namespace f2c {

/// Homogeneous polynomial with coefficients in one FieldTable, dense over
/// MonomialBasis::of(degree).
struct ExtPoly {
  int degree = 0;
  std::vector<Elem> coeff;

  bool is_zero() const noexcept;
  /// Index of the leading (first nonzero) basis monomial, -1 for zero.
  int leading_index() const noexcept;

  friend bool operator==(const ExtPoly&, const ExtPoly&) = default;
};

ExtPoly lift(const PolyMask& f);
ExtPoly multiply(const ExtPoly& a, const ExtPoly& b, const FieldTable& F);
/// Canonical text; a coefficient other than 1 prints as "(g^e)" with g the
/// field's generator.
std::string to_text(const ExtPoly& f, const FieldTable& F);

/// Exact divisibility g | f by multivariate division under the basis order.
/// Throws std::invalid_argument for zero g or deg g outside [1, deg f).
bool divides(const ExtPoly& g, const ExtPoly& f, const FieldTable& F);
bool divides(const PolyMask& g, const PolyMask& f);

struct Divisor {
  int k = 1;  // coefficients in GF(2^k)
  ExtPoly g;
};

/// Irreducibility of f over GF(2^k), k in {1, 2, 3}; on failure the first
/// divisor found.
///
/// Over GF(2) every form of degree 1..deg f / 2 is tried. Over GF(4) and
/// GF(8) an f irreducible over GF(2) can only split into one Frobenius
/// orbit of conjugate factors of degree deg f / k, so only that degree is
/// searched (via the norm equation g0^2 + g0 g1 + g1^2 = f for k = 2).
std::optional<Divisor> find_divisor(const PolyMask& f, int k);
bool is_irreducible(const PolyMask& f, int k);

/// Brute force over every monic divisor of degree 1..deg f / 2; only for
/// small inputs.
std::optional<ExtPoly> find_divisor_exhaustive(const ExtPoly& f, const FieldTable& F);

struct SimplePoint {
  int k = 1;
  Point point;
};

/// First point over GF(2), then GF(4), ... GF(2^max_k) where f vanishes and
/// the gradient does not.
std::optional<SimplePoint> find_simple_point(const PolyMask& f, int max_k = 3);

enum class Absolute { yes, reducible, unknown };

std::string to_string(Absolute a);

struct IrreducibilityStatus {
  bool irreducible_over_f2 = false;
  std::optional<SimplePoint> simple_point;
  Absolute absolute = Absolute::unknown;
  /// k of the field used for the certificate (0 when absolute != yes).
  int certificate_field = 0;
  std::optional<Divisor> witness;
};

/// Irreducible over GF(2^k) plus a simple GF(2^k)-point for the same k
/// certifies absolute irreducibility; any divisor found proves the
/// opposite.
IrreducibilityStatus certify_absolute(const PolyMask& f);

}  // namespace f2c
