#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace f2c {

/// An element of GF(2^m): the coefficient vector of its residue class,
/// low bit = constant term.
using Elem = std::uint16_t;

inline constexpr int kMaxFieldDegree = 11;

/// Exp/log tables for GF(2^m), 1 <= m <= 11.
///
/// The default constructor picks the lexicographically smallest primitive
/// polynomial of degree m. Any irreducible polynomial may be supplied
/// instead; the generator is then the smallest element of full order.
/// Immutable after construction.
class FieldTable {
 public:
  explicit FieldTable(int m);
  FieldTable(int m, std::uint32_t defining_poly);

  int degree() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t defining_poly() const noexcept { return poly_; }
  Elem generator() const noexcept { return q_ == 2 ? 1 : exp_[1]; }

  /// exp_table()[i] = generator^i, length q - 1.
  std::span<const Elem> exp_table() const noexcept { return {exp_.data(), q_ - 1}; }
  /// log_table()[a] for a != 0; entry 0 is unused.
  std::span<const std::uint16_t> log_table() const noexcept { return log_; }

  static constexpr Elem add(Elem a, Elem b) noexcept { return a ^ b; }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Elem exp(std::uint32_t e) const noexcept { return exp_[e % (q_ - 1)]; }
  std::uint16_t log(Elem a) const noexcept { return log_[a]; }

  Elem pow(Elem a, std::int64_t e) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem square(Elem a) const noexcept { return mul(a, a); }
  /// a^(2^k)
  Elem frobenius(Elem a, int k) const noexcept;
  /// Smallest e dividing m with a in GF(2^e).
  int subfield_degree(Elem a) const noexcept;

  bool contains(std::uint32_t a) const noexcept { return a < q_; }

 private:
  void build();

  int m_;
  std::uint32_t q_;
  std::uint32_t poly_;
  // Twice the group order so mul can skip the modulo.
  std::vector<Elem> exp_;
  std::vector<std::uint16_t> log_;
};

/// Carry-less product of two binary polynomials reduced modulo `modulus`.
/// Slow; used to build and check tables.
std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus);

/// Trial division against every binary polynomial of degree 1..deg/2.
bool is_irreducible_gf2(std::uint32_t poly);

/// Irreducible and x has multiplicative order 2^deg - 1 modulo poly.
bool is_primitive_gf2(std::uint32_t poly);

/// Lexicographically smallest primitive polynomial of degree m
/// (coefficients compared from the top bit down).
std::uint32_t smallest_primitive_poly(int m);

/// Field for q = 2^m; throws std::invalid_argument if q is not such a power.
int field_degree_of(std::uint32_t q);

/// Cached shared instance for GF(2^m), default polynomial.
const FieldTable& field(int m);

}  // namespace f2c
