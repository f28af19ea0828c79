#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "f2curves/genusbounds.hpp"
#include "f2curves/orbit.hpp"
#include "f2curves/record.hpp"

namespace f2c {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchConfig {
  int degree = 4;
  /// Field orders 2^m, m = 3..11.
  std::vector<std::uint32_t> fields;
  /// A curve is kept when N_lo >= bound(q, g) - threshold for some
  /// configured q and some g >= min_genus inside its genus interval.
  std::int64_t threshold = 15;
  int min_genus = 1;
  unsigned jobs = 1;
  std::filesystem::path checkpoint_path;
  /// Empty: the shipped table.
  std::filesystem::path lauter_path;
  /// Masks per sieve range; 0 picks a size from the degree.
  std::uint32_t batch_size = 0;
  /// Stop (after checkpointing) once this many batches ran in this call;
  /// 0 runs to completion.
  std::uint64_t stop_after_batches = 0;
  /// Seconds between checkpoint writes while running.
  double checkpoint_interval = 60.0;

  /// Throws ConfigError.
  void validate() const;
  /// Sorted, deduplicated fields.
  std::vector<std::uint32_t> normalized_fields() const;
  std::uint32_t effective_batch_size() const;
};

struct CatalogEntry {
  std::uint32_t mask = 0;
  std::string line;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct SearchProgress {
  std::uint64_t position = 0;
  std::uint64_t end = 0;
  std::uint64_t orbits = 0;
  std::uint64_t candidates = 0;
  std::uint64_t kept = 0;
};

struct SearchResult {
  /// Sorted by mask (all entries share the configured degree).
  std::vector<CatalogEntry> catalog;
  SieveStats stats;
  /// Curves that passed the count-only prefilter and got a full analysis.
  std::uint64_t candidates = 0;
  bool complete = false;
  bool resumed = false;
};

/// Deterministic for a fixed configuration, whatever `jobs` is. With a
/// checkpoint path an existing compatible checkpoint is resumed; an
/// incompatible or corrupted one raises CheckpointError.
SearchResult run_search(const SearchConfig& cfg,
                        const std::function<void(const SearchProgress&)>& progress = {});

/// Keep rule applied to an analyzed record.
bool meets_threshold(const CurveRecord& r, std::int64_t threshold, int min_genus, const BoundTable& bounds);

void write_catalog(std::ostream& out, const std::vector<CatalogEntry>& catalog);
/// One JSON object per nonblank line.
std::vector<Json> read_catalog(std::istream& in);
std::vector<Json> read_catalog(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Checkpoints

struct Checkpoint {
  int degree = 0;
  std::uint64_t config_hash = 0;
  std::uint64_t position = 0;
  SieveStats stats;
  std::uint64_t candidates = 0;
  std::vector<std::uint64_t> words;
  std::vector<CatalogEntry> catalog;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::uint64_t config_hash(const SearchConfig& cfg, const BoundTable& bounds);

/// Written to a temporary file and renamed into place.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);
/// Throws CheckpointError on any format, length or checksum problem.
Checkpoint load_checkpoint(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Tallies

struct TallyCell {
  std::uint32_t q = 0;
  int g = 0;
  std::optional<std::int64_t> best;
  std::string best_mask;
  Bound bound;
};

struct Tally {
  std::vector<TallyCell> cells;
  /// Records whose genus interval is not a single value.
  std::vector<CatalogSummary> ambiguous;

  const TallyCell* cell(std::uint32_t q, int g) const noexcept;
};

/// best(q, g) = max N_lo over records with genus interval [g, g].
/// Throws std::invalid_argument for an empty catalog.
Tally make_tally(const std::vector<CatalogSummary>& catalog, const BoundTable& bounds, int g_min = 3,
                 int g_max = 10);
std::string format_tally(const Tally& t);

}  // namespace f2c
