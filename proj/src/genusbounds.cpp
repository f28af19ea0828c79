#include "f2curves/genusbounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef F2C_DATA_DIR
#define F2C_DATA_DIR "data"
#endif

namespace f2c {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("F2C_DATA_DIR"); env && *env) return env;
  return F2C_DATA_DIR;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && (r > n / r || r * r > n)) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

std::int64_t serre_bound(std::int64_t q, std::int64_t g) {
  return q + 1 + g * static_cast<std::int64_t>(isqrt(4 * static_cast<std::uint64_t>(q)));
}

std::int64_t ihara_bound(std::int64_t q, std::int64_t g) {
  // floor((A + sqrt D) / 2) = floor((A + isqrt D) / 2) for integers A, D.
  const std::int64_t disc = (8 * q + 1) * g * g + 4 * (q * q - q) * g;
  const std::int64_t a = 2 * q + 2 - g;
  return (a + static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(disc)))) / 2;
}

std::string to_string(BoundSource s) {
  switch (s) {
    case BoundSource::serre: return "serre";
    case BoundSource::ihara: return "ihara";
    case BoundSource::lauter: return "lauter";
  }
  return "serre";
}

void BoundTable::add(std::int64_t q, std::int64_t g, std::int64_t bound) {
  if (q < 2 || !std::has_single_bit(static_cast<std::uint64_t>(q)))
    throw std::invalid_argument("bound table: q must be a power of two, got " + std::to_string(q));
  if (g < 0) throw std::invalid_argument("bound table: negative genus");
  if (bound > serre_bound(q, g))
    throw std::invalid_argument("bound table: entry (" + std::to_string(q) + ", " + std::to_string(g) +
                                ") exceeds the Serre bound");
  if (!entries_.emplace(std::pair{q, g}, bound).second)
    throw std::invalid_argument("bound table: duplicate entry (" + std::to_string(q) + ", " +
                                std::to_string(g) + ")");
}

std::optional<std::int64_t> BoundTable::find(std::int64_t q, std::int64_t g) const {
  if (auto it = entries_.find({q, g}); it != entries_.end()) return it->second;
  return std::nullopt;
}

BoundTable BoundTable::parse(const std::string& text) {
  BoundTable t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::int64_t q, g, bound;
    if (!(fields >> q)) continue;
    std::string extra;
    if (!(fields >> g >> bound) || (fields >> extra))
      throw std::invalid_argument("bound table: malformed line " + std::to_string(lineno));
    t.add(q, g, bound);
  }
  return t;
}

BoundTable BoundTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bound table " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const BoundTable& BoundTable::shipped() {
  static const BoundTable table = load(data_dir() / "lauter.txt");
  return table;
}

Bound effective_bound(std::int64_t q, std::int64_t g, const BoundTable& table) {
  Bound b{serre_bound(q, g), BoundSource::serre};
  if (const auto i = ihara_bound(q, g); i < b.value) b = {i, BoundSource::ihara};
  if (const auto l = table.find(q, g); l && *l < b.value) b = {*l, BoundSource::lauter};
  return b;
}

int genus_lower_bound(std::int64_t q, std::int64_t smooth, const BoundTable* table) {
  // Serre grows without limit in g, so the loop ends.
  for (int g = 0;; ++g) {
    const std::int64_t bound = table ? effective_bound(q, g, *table).value : serre_bound(q, g);
    if (bound >= smooth) return g;
  }
}

namespace {

int lower_over_fields(const std::map<std::uint32_t, std::int64_t>& smooth, const BoundTable* table) {
  int lo = 0;
  for (const auto& [q, s] : smooth) lo = std::max(lo, genus_lower_bound(q, s, table));
  return lo;
}

}  // namespace

GenusInterval genus_interval(int d, int r, const std::map<std::uint32_t, std::int64_t>& smooth,
                             const BoundTable* table) {
  return {lower_over_fields(smooth, table), plane_genus(d) - r};
}

GenusInterval genus_interval(int d, std::span<const int> multiplicities,
                             const std::map<std::uint32_t, std::int64_t>& smooth,
                             const BoundTable* table) {
  int hi = plane_genus(d);
  for (int m : multiplicities) hi -= m * (m - 1) / 2;
  return {lower_over_fields(smooth, table), hi};
}

GenusInterval genus_interval_with_deficit(int d, int deficit, const std::map<std::uint32_t, std::int64_t>& smooth,
                                          const BoundTable* table) {
  return {lower_over_fields(smooth, table), plane_genus(d) - deficit};
}

ModelBounds smooth_model_bounds(const FieldObservation& obs, const GenusInterval& genus,
                                const BoundTable& table) {
  ModelBounds b;
  b.n_lo = obs.smooth + obs.credited;
  b.n_hi = obs.smooth + obs.rational_multiplicity;
  if (genus.hi >= 0) b.n_hi = std::min(b.n_hi, effective_bound(obs.q, genus.hi, table).value);
  return b;
}

}  // namespace f2c
