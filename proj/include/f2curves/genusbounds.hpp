#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

namespace f2c {

/// Directory holding lauter.txt and corpus.txt: $F2C_DATA_DIR if set,
/// otherwise the source tree's data/.
std::filesystem::path data_dir();

/// floor(sqrt(n)), exact for every 64-bit n.
std::uint64_t isqrt(std::uint64_t n);

/// q + 1 + g floor(2 sqrt q)
std::int64_t serre_bound(std::int64_t q, std::int64_t g);
/// floor(q + 1 + (sqrt((8q + 1) g^2 + 4 (q^2 - q) g) - g) / 2)
std::int64_t ihara_bound(std::int64_t q, std::int64_t g);

enum class BoundSource { serre, ihara, lauter };
std::string to_string(BoundSource s);

struct Bound {
  std::int64_t value = 0;
  BoundSource source = BoundSource::serre;

  friend bool operator==(const Bound&, const Bound&) = default;
};

/// Tabulated upper bounds for N_q(g), keyed (q, g).
class BoundTable {
 public:
  /// Throws std::invalid_argument on duplicates, non-powers of two, or
  /// bounds above the Serre bound.
  void add(std::int64_t q, std::int64_t g, std::int64_t bound);
  std::optional<std::int64_t> find(std::int64_t q, std::int64_t g) const;
  const std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t>& entries() const noexcept {
    return entries_;
  }

  /// Text file: "q g bound" per line, '#' starts a comment.
  static BoundTable parse(const std::string& text);
  static BoundTable load(const std::filesystem::path& path);
  /// data/lauter.txt from the source tree.
  static const BoundTable& shipped();

 private:
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> entries_;
};

/// Smallest of Serre, Ihara and the table entry; ties keep the earlier
/// source in that order.
Bound effective_bound(std::int64_t q, std::int64_t g, const BoundTable& table);

struct GenusInterval {
  int lo = 0;
  int hi = 0;

  bool consistent() const noexcept { return lo <= hi; }
  bool pinned() const noexcept { return lo == hi; }
  friend bool operator==(const GenusInterval&, const GenusInterval&) = default;
};

constexpr int plane_genus(int d) { return (d - 1) * (d - 2) / 2; }

/// Least g whose bound admits `smooth` points (the smooth plane points
/// embed in the smooth model). With a table, any of the three bounds may
/// exclude a genus; without one only Serre is used.
int genus_lower_bound(std::int64_t q, std::int64_t smooth, const BoundTable* table = nullptr);

/// hi = (d-1)(d-2)/2 - r, lo = max over fields of genus_lower_bound.
/// lo > hi is returned as is; callers treat it as an inconsistency.
GenusInterval genus_interval(int d, int r, const std::map<std::uint32_t, std::int64_t>& smooth,
                             const BoundTable* table = nullptr);

/// Same, with each singular point of multiplicity m lowering hi by
/// m (m - 1) / 2.
GenusInterval genus_interval(int d, std::span<const int> multiplicities,
                             const std::map<std::uint32_t, std::int64_t>& smooth,
                             const BoundTable* table = nullptr);

/// hi = (d-1)(d-2)/2 - deficit, with deficit a lower bound on the sum of
/// the delta invariants of the singular points.
GenusInterval genus_interval_with_deficit(int d, int deficit, const std::map<std::uint32_t, std::int64_t>& smooth,
                                          const BoundTable* table = nullptr);

struct FieldObservation {
  std::uint32_t q = 0;
  std::int64_t smooth = 0;
  /// Smooth-model points certainly lying over F_q-rational singular points.
  std::int64_t credited = 0;
  /// Upper bound on the smooth-model points over the F_q-rational singular
  /// points (at most m places lie over a point of multiplicity m).
  std::int64_t rational_multiplicity = 0;
};

struct ModelBounds {
  std::int64_t n_lo = 0;
  std::int64_t n_hi = 0;

  friend bool operator==(const ModelBounds&, const ModelBounds&) = default;
};

/// N_lo = S + credited, N_hi = min(S + rational_multiplicity, bound at
/// genus hi).
ModelBounds smooth_model_bounds(const FieldObservation& obs, const GenusInterval& genus,
                                const BoundTable& table);

}  // namespace f2c
