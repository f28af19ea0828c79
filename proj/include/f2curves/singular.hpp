#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "f2curves/gf2m.hpp"
#include "f2curves/polyrep.hpp"

namespace f2c {

/// sum_i coeff[i] * u^i * v^(m - i), coefficients in one FieldTable.
struct BinaryForm {
  std::vector<Elem> coeff;

  int degree() const noexcept { return static_cast<int>(coeff.size()) - 1; }
  bool is_zero() const noexcept;
  Elem evaluate(const FieldTable& F, Elem u, Elem v) const;

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

/// A root (u : v) of a binary form with its multiplicity.
struct FormRoot {
  Elem u = 0;
  Elem v = 0;
  int multiplicity = 0;

  friend bool operator==(const FormRoot&, const FormRoot&) = default;
};

/// Roots in P^1(F_q), ordered (0 : 1) first, then (1 : t) by ascending t.
/// Multiplicities come from repeated deflation by the linear factor.
/// Throws std::invalid_argument for the zero form.
std::vector<FormRoot> factor_binary_form(const BinaryForm& form, const FieldTable& F);

/// True iff no linear or higher factor is repeated (over the algebraic
/// closure).
bool is_squarefree(const BinaryForm& form, const FieldTable& F);

/// Chart for local expansion: the first nonzero coordinate of p is set to 1
/// and the remaining two, shifted by p, become (u, v) in x, y, z order.
struct LocalExpansion {
  int degree = 0;
  /// coeff[s * (degree + 1) + t] of u^s v^t
  std::vector<Elem> coeff;

  Elem at(int s, int t) const noexcept { return coeff[s * (degree + 1) + t]; }
  /// Lowest total degree with a nonzero coefficient.
  int order() const noexcept;
  /// Homogeneous part of total degree m as a form in (u, v).
  BinaryForm part(int m) const;
};

LocalExpansion local_expansion(const PolyMask& f, const FieldTable& F, const Point& p);

/// 1 at smooth points. Throws std::invalid_argument if f(p) != 0.
int multiplicity_at(const PolyMask& f, const FieldTable& F, const Point& p);

/// Lowest-degree part of the local expansion. Throws at smooth points or
/// points off the curve.
BinaryForm tangent_cone_at(const PolyMask& f, const FieldTable& F, const Point& p);

/// Factorization-shape name: "u v", "u^2+u v+v^2", "u v^2",
/// "(u+v)(u^2+u v+v^2)", "u v(u+v)", otherwise "deg=<m> squarefree=<0|1>".
/// Forms with GF(2) coefficients are factored over GF(2); others by their
/// F_q-rational roots.
std::string cone_type(const BinaryForm& form, const FieldTable& F);

struct SingularPoint {
  Point point;
  std::uint32_t q = 0;
  /// Smallest e with the point defined over GF(2^e).
  int k = 1;
  int multiplicity = 0;
  BinaryForm tangent_cone;
  std::string type;
  bool ordinary = false;
};

SingularPoint analyze_singular_point(const PolyMask& f, const FieldTable& F, const Point& p);

struct BlowupEstimate {
  /// Smooth-model points over F_q certainly lying above the singularity:
  /// one per simple F_q-rational tangent direction.
  int lower = 0;
  /// The singularity is ordinary, so `lower` is exact.
  bool exact_known = false;
  /// Distinct F_q-rational tangent directions.
  int rational_directions = 0;
};

/// `s.tangent_cone` must be expressed in F.
BlowupEstimate blowup_points_estimate(const SingularPoint& s, const FieldTable& F);

/// Infinitely near points of a singularity, followed by blowing up along
/// each repeated tangent direction until the strict transform is smooth.
struct Resolution {
  /// sum of m (m - 1) / 2 over the infinitely near points reached
  int delta = 0;
  /// Branches through F-rational smooth points of the strict transform,
  /// i.e. F-rational points of the smooth model above the singularity.
  int rational_places = 0;
  /// False when a repeated tangent direction is not defined over F (or
  /// the depth limit hit); delta and rational_places are then lower bounds.
  bool complete = true;
};

/// Throws std::invalid_argument if p is not a point of the curve.
Resolution resolve_singularity(const PolyMask& f, const FieldTable& F, const Point& p);

/// sum m_i <= floor(d/2) r + 1 for odd d, floor(d/2) r for even d.
/// Requires r >= 2 multiplicities (std::invalid_argument otherwise).
bool check_multiplicity_sum(std::span<const int> multiplicities, int degree);

/// "(1:0:0)"; coordinates print as their integer encodings.
std::string point_text(const Point& p);
/// Minimal e such that every coordinate of p lies in GF(2^e).
int point_field_degree(const FieldTable& F, const Point& p);

}  // namespace f2c
