#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "f2curves/polyrep.hpp"

namespace f2c {

using GroupElement = BitMatrix3;

inline constexpr int kGroupOrder = 168;

/// The 168 invertible 3x3 matrices over GF(2), ascending by bit encoding.
std::vector<GroupElement> enumerate_gl3();
const std::vector<GroupElement>& gl3();

/// Applies every element of gl3() to a mask at once, via per-byte lookup
/// tables (a substitution is linear over GF(2)).
class OrbitMap {
 public:
  static const OrbitMap& of(int degree);

  int degree() const noexcept { return degree_; }
  /// out[g] = substitute(bits, gl3()[g]).
  void images(std::uint32_t bits, std::span<std::uint32_t, kGroupOrder> out) const noexcept;

 private:
  explicit OrbitMap(int degree);

  int degree_;
  int chunks_;
  // table_[(chunk * 256 + byte) * 168 + g]
  std::vector<std::uint32_t> table_;
};

/// Distinct images of f under GL3(F2), sorted by bits.
std::vector<PolyMask> orbit_of(const PolyMask& f);

/// Evaluation cost of a representative: its number of monomials.
inline int representative_cost(const PolyMask& f) noexcept { return f.terms(); }

/// Member of minimum cost; ties go to the smallest bits.
PolyMask select_representative(std::span<const PolyMask> orbit);

struct OrbitInfo {
  PolyMask representative;
  std::uint32_t min_member = 0;
  std::uint32_t orbit_size = 0;
  /// Some member is a square or divisible by a variable, i.e. f has a linear
  /// factor over GF(2) or is a perfect square.
  bool trivially_reducible = false;
};

/// Orbit information computed from scratch (no sieve table involved).
OrbitInfo describe_orbit(const PolyMask& f);

/// One bit per mask of the given degree; bit n set while polynomial n is
/// unclaimed. Bit 0 (the zero polynomial) starts cleared.
///
/// Bits may be cleared concurrently (atomic fetch_and).
class SieveTable {
 public:
  explicit SieveTable(int degree);

  int degree() const noexcept { return degree_; }
  /// 2^monomial_count(degree)
  std::uint64_t bit_count() const noexcept { return std::uint64_t{1} << count_; }
  std::size_t word_count() const noexcept { return words_.size(); }

  bool test(std::uint32_t n) const noexcept;
  void clear(std::uint32_t n) noexcept;
  std::uint64_t load_word(std::size_t w) const noexcept;
  std::uint64_t popcount() const noexcept;

  /// Raw little-endian 64-bit words, bit n of the table is bit (n % 64) of
  /// word n / 64.
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  void assign_words(std::span<const std::uint64_t> words);

  /// FNV-1a over the words.
  std::uint64_t digest() const noexcept;

 private:
  int degree_;
  int count_;
  std::vector<std::uint64_t> words_;
};

struct SieveStats {
  std::uint64_t orbits = 0;
  std::uint64_t emitted = 0;
  std::uint64_t skipped_orbits = 0;
  std::uint64_t masks_covered = 0;
  std::uint64_t skipped_masks = 0;

  SieveStats& operator+=(const SieveStats& o) noexcept;
  friend bool operator==(const SieveStats&, const SieveStats&) = default;
};

/// Claims every orbit whose smallest member lies in [begin, end), in
/// ascending order of that member. Clears all members in the table.
/// Orbits with a trivially reducible member are counted but not returned.
///
/// Distinct ranges may be scanned concurrently on the same table; an orbit
/// is reported only by the range containing its smallest member, so the
/// union of results does not depend on scheduling.
std::vector<OrbitInfo> sieve_range(SieveTable& table, std::uint32_t begin, std::uint32_t end,
                                   SieveStats& stats);

/// Whole-space sieve; `jobs` worker threads. Results ascend by min_member.
std::vector<OrbitInfo> sieve(int degree, unsigned jobs, SieveStats* stats = nullptr);

/// Streaming form: visitor(representative, orbit_size) in ascending order.
SieveStats sieve(int degree, unsigned jobs,
                 const std::function<void(const PolyMask&, std::uint32_t)>& visitor);

}  // namespace f2c
