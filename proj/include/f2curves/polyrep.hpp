#pragma once

// Homogeneous polynomials over GF(2) in x, y, z as monomial bit masks.
//
// Basis order (degree d): graded-lex, descending in the x exponent, then in
// the y exponent:
//   x^d, x^(d-1)y, x^(d-1)z, x^(d-2)y^2, x^(d-2)yz, x^(d-2)z^2, ..., z^d
// Bit t of a mask is the coefficient of basis monomial t.
//
// Linear substitution uses the row-vector convention. A 3x3 bit matrix M
// acts by f -> f((x, y, z) * M), i.e. the variable in column c is replaced by
// sum_r M[r][c] * v_r. Consequently
//   substitute(substitute(f, A), B) == substitute(f, B * A)
//   evaluate(substitute(f, M), p)   == evaluate(f, p * M)
// where p is read as a row vector.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "f2curves/gf2m.hpp"

namespace f2c {

inline constexpr int kMaxDegree = 6;

struct Monomial {
  int x = 0;
  int y = 0;
  int z = 0;

  int degree() const noexcept { return x + y + z; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

class MonomialBasis {
 public:
  /// Shared basis for 0 <= degree <= kMaxDegree.
  static const MonomialBasis& of(int degree);

  int degree() const noexcept { return degree_; }
  int size() const noexcept { return static_cast<int>(monomials_.size()); }
  std::span<const Monomial> monomials() const noexcept { return monomials_; }
  const Monomial& operator[](int t) const noexcept { return monomials_[t]; }

  /// Index of m in this basis, or -1 if m has another degree.
  int index_of(const Monomial& m) const noexcept;
  /// Mask with every basis bit set.
  std::uint32_t full_mask() const noexcept {
    return size() == 32 ? ~0u : (1u << size()) - 1;
  }

 private:
  explicit MonomialBasis(int degree);

  int degree_;
  std::vector<Monomial> monomials_;
  // index_[x][y] for x + y <= degree
  std::vector<std::vector<int>> index_;
};

inline constexpr int monomial_count(int degree) { return (degree + 1) * (degree + 2) / 2; }

struct PolyMask {
  int degree = 0;
  std::uint32_t bits = 0;

  bool is_zero() const noexcept { return bits == 0; }
  int terms() const noexcept;

  friend bool operator==(const PolyMask&, const PolyMask&) = default;
  friend auto operator<=>(const PolyMask&, const PolyMask&) = default;
};

/// Projective (or affine-cone) point with coordinates in one FieldTable.
struct Point {
  Elem x = 0;
  Elem y = 0;
  Elem z = 0;

  Elem operator[](int i) const noexcept { return i == 0 ? x : (i == 1 ? y : z); }
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Throws std::invalid_argument on mixed degrees, negative exponents or
/// duplicate monomials.
PolyMask encode(std::span<const Monomial> monomials);
PolyMask encode(int degree, std::span<const Monomial> monomials);
/// Set monomials in basis order.
std::vector<Monomial> decode(const PolyMask& f);

/// Canonical text, e.g. "x^5*y + x*z^5 + y^5*z".
std::string to_text(const PolyMask& f);
/// "d6:0x0f00a031"
std::string to_hex(const PolyMask& f);

/// Parses a polynomial expression over GF(2): sums, products (explicit `*`
/// or juxtaposition), powers and parentheses. Coefficients are reduced
/// mod 2. The result must be a nonzero homogeneous form of degree 1..6.
PolyMask parse_poly(std::string_view text);
/// Parses "d<deg>:0x<hex>".
PolyMask parse_hex(std::string_view text);
/// Either of the two forms above.
PolyMask parse_any(std::string_view text);

/// Values of every basis monomial of `degree` at p, in basis order.
void monomial_values(int degree, const FieldTable& F, const Point& p, std::span<Elem> out);

Elem evaluate(const PolyMask& f, const FieldTable& F, const Point& p);

/// Formal partial derivatives (df/dx, df/dy, df/dz), each of degree d - 1.
std::array<PolyMask, 3> partials(const PolyMask& f);

/// Product of two forms; total degree must not exceed kMaxDegree.
PolyMask multiply(const PolyMask& a, const PolyMask& b);

/// The degree-1 form of variable 0 (x), 1 (y) or 2 (z).
PolyMask variable(int v);

/// Perfect square in characteristic 2 or divisible by x, y or z.
bool is_trivially_reducible(const PolyMask& f);

/// 3x3 matrix over GF(2). Row r occupies bits 3r..3r+2; bit c of a row is
/// column c.
struct BitMatrix3 {
  std::uint16_t bits = 0;

  static constexpr BitMatrix3 identity() noexcept { return {0b100'010'001}; }

  bool at(int r, int c) const noexcept { return (bits >> (3 * r + c)) & 1; }
  int row(int r) const noexcept { return (bits >> (3 * r)) & 7; }
  bool determinant() const noexcept;
  bool invertible() const noexcept { return determinant(); }

  friend BitMatrix3 operator*(const BitMatrix3& a, const BitMatrix3& b) noexcept;
  friend bool operator==(const BitMatrix3&, const BitMatrix3&) = default;
  friend auto operator<=>(const BitMatrix3&, const BitMatrix3&) = default;
};

/// Row vector times matrix: (p * M)_c = sum_r p_r M[r][c].
Point apply(const Point& p, const BitMatrix3& m) noexcept;

/// Image of each basis monomial of `degree` under every 9-bit matrix.
/// Built once per degree, read-only afterwards.
class SubstitutionTable {
 public:
  static const SubstitutionTable& of(int degree);

  /// Image mask of basis monomial t under m (m need not be invertible).
  std::uint32_t image(BitMatrix3 m, int t) const noexcept {
    return images_[static_cast<std::size_t>(m.bits) * stride_ + t];
  }
  std::uint32_t apply(BitMatrix3 m, std::uint32_t bits) const noexcept;

 private:
  explicit SubstitutionTable(int degree);

  int stride_;
  std::vector<std::uint32_t> images_;
};

/// f((x, y, z) * M). Throws std::invalid_argument for singular M.
PolyMask substitute(const PolyMask& f, const BitMatrix3& m);

}  // namespace f2c
