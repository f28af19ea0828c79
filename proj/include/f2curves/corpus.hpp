#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "f2curves/polyrep.hpp"
#include "f2curves/record.hpp"

namespace f2c {

struct CorpusEntry {
  std::string id;
  std::uint32_t q = 0;
  PolyMask f;
  std::int64_t smooth = 0;
  int genus = 0;
  /// (point text, cone type) pairs.
  std::vector<std::pair<std::string, std::string>> singular;
  std::int64_t n_lower = 0;
};

/// Blocks of "key = value" lines headed by "[id]"; '#' starts a comment.
/// The singular key may repeat. Throws std::invalid_argument on a
/// malformed or incomplete entry, an unparsable polynomial, or a
/// trivially reducible one.
std::vector<CorpusEntry> parse_corpus(const std::string& text);
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path);
/// data/corpus.txt from the source tree.
std::vector<CorpusEntry> load_corpus();

struct CorpusCheck {
  std::string id;
  std::string assertion;
  bool pass = false;
  std::string detail;
};

struct CorpusReport {
  std::vector<CorpusCheck> checks;

  std::size_t failures() const noexcept;
  bool passed() const noexcept { return failures() == 0; }
};

/// Runs verify on every entry and compares smooth counts and singular
/// points exactly, the genus by interval containment, the lower bound by
/// N_lo >= n_lower, and requires absolute irreducibility certified over a
/// field of degree <= 3.
CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, unsigned jobs = 1,
                        const AnalysisOptions& options = {});

}  // namespace f2c
