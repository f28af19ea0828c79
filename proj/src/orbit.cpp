#include "f2curves/orbit.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace f2c {

std::vector<GroupElement> enumerate_gl3() {
  std::vector<GroupElement> out;
  for (std::uint16_t bits = 0; bits < 512; ++bits) {
    BitMatrix3 m{bits};
    if (m.invertible()) out.push_back(m);
  }
  return out;
}

const std::vector<GroupElement>& gl3() {
  static const std::vector<GroupElement> group = enumerate_gl3();
  return group;
}

// ---------------------------------------------------------------------------

OrbitMap::OrbitMap(int degree)
    : degree_(degree), chunks_((monomial_count(degree) + 7) / 8) {
  const auto& sub = SubstitutionTable::of(degree);
  const auto& group = gl3();
  table_.assign(static_cast<std::size_t>(chunks_) * 256 * kGroupOrder, 0);
  for (int c = 0; c < chunks_; ++c) {
    for (std::uint32_t byte = 0; byte < 256; ++byte) {
      const std::uint32_t bits = (byte << (8 * c)) & MonomialBasis::of(degree).full_mask();
      for (int g = 0; g < kGroupOrder; ++g)
        table_[(static_cast<std::size_t>(c) * 256 + byte) * kGroupOrder + g] =
            sub.apply(group[g], bits);
    }
  }
}

const OrbitMap& OrbitMap::of(int degree) {
  if (degree < 1 || degree > kMaxDegree)
    throw std::invalid_argument("degree out of range: " + std::to_string(degree));
  static std::array<std::once_flag, kMaxDegree + 1> once;
  static std::array<const OrbitMap*, kMaxDegree + 1> cache{};
  std::call_once(once[degree], [degree] { cache[degree] = new OrbitMap(degree); });
  return *cache[degree];
}

void OrbitMap::images(std::uint32_t bits,
                      std::span<std::uint32_t, kGroupOrder> out) const noexcept {
  std::fill(out.begin(), out.end(), 0u);
  for (int c = 0; c < chunks_; ++c) {
    const std::uint32_t byte = (bits >> (8 * c)) & 0xff;
    if (byte == 0) continue;
    const std::uint32_t* row = table_.data() + (static_cast<std::size_t>(c) * 256 + byte) * kGroupOrder;
    for (int g = 0; g < kGroupOrder; ++g) out[g] ^= row[g];
  }
}

// ---------------------------------------------------------------------------

std::vector<PolyMask> orbit_of(const PolyMask& f) {
  std::array<std::uint32_t, kGroupOrder> img;
  OrbitMap::of(f.degree).images(f.bits, img);
  std::sort(img.begin(), img.end());
  std::vector<PolyMask> out;
  for (std::size_t i = 0; i < img.size(); ++i)
    if (i == 0 || img[i] != img[i - 1]) out.push_back({f.degree, img[i]});
  return out;
}

PolyMask select_representative(std::span<const PolyMask> orbit) {
  if (orbit.empty()) throw std::invalid_argument("empty orbit");
  return *std::min_element(orbit.begin(), orbit.end(), [](const PolyMask& a, const PolyMask& b) {
    const int ca = representative_cost(a), cb = representative_cost(b);
    return ca != cb ? ca < cb : a.bits < b.bits;
  });
}

namespace {

// Fills info from the sorted, deduplicated images.
OrbitInfo summarize(int degree, std::span<std::uint32_t> sorted_unique) {
  OrbitInfo info;
  info.min_member = sorted_unique.front();
  info.orbit_size = static_cast<std::uint32_t>(sorted_unique.size());
  std::uint32_t best = sorted_unique.front();
  int best_cost = std::popcount(best);
  for (auto b : sorted_unique) {
    const int c = std::popcount(b);
    if (c < best_cost) best = b, best_cost = c;
    if (!info.trivially_reducible && is_trivially_reducible({degree, b}))
      info.trivially_reducible = true;
  }
  info.representative = {degree, best};
  return info;
}

std::size_t sort_unique(std::span<std::uint32_t, kGroupOrder> img) {
  std::sort(img.begin(), img.end());
  return static_cast<std::size_t>(std::unique(img.begin(), img.end()) - img.begin());
}

}  // namespace

OrbitInfo describe_orbit(const PolyMask& f) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial has no orbit");
  std::array<std::uint32_t, kGroupOrder> img;
  OrbitMap::of(f.degree).images(f.bits, img);
  const std::size_t n = sort_unique(img);
  return summarize(f.degree, std::span(img.data(), n));
}

// ---------------------------------------------------------------------------

SieveTable::SieveTable(int degree) : degree_(degree), count_(monomial_count(degree)) {
  if (degree < 1 || degree > kMaxDegree)
    throw std::invalid_argument("degree out of range: " + std::to_string(degree));
  const std::uint64_t bits = std::uint64_t{1} << count_;
  words_.assign((bits + 63) / 64, ~std::uint64_t{0});
  if (bits < 64) words_[0] = (std::uint64_t{1} << bits) - 1;
  words_[0] &= ~std::uint64_t{1};
}

bool SieveTable::test(std::uint32_t n) const noexcept { return (load_word(n / 64) >> (n % 64)) & 1; }

void SieveTable::clear(std::uint32_t n) noexcept {
  std::atomic_ref<std::uint64_t> w(words_[n / 64]);
  w.fetch_and(~(std::uint64_t{1} << (n % 64)), std::memory_order_relaxed);
}

std::uint64_t SieveTable::load_word(std::size_t w) const noexcept {
  std::atomic_ref<const std::uint64_t> ref(words_[w]);
  return ref.load(std::memory_order_relaxed);
}

std::uint64_t SieveTable::popcount() const noexcept {
  std::uint64_t n = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) n += std::popcount(load_word(w));
  return n;
}

void SieveTable::assign_words(std::span<const std::uint64_t> words) {
  if (words.size() != words_.size()) throw std::invalid_argument("sieve table size mismatch");
  std::copy(words.begin(), words.end(), words_.begin());
}

std::uint64_t SieveTable::digest() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t v = load_word(w);
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

SieveStats& SieveStats::operator+=(const SieveStats& o) noexcept {
  orbits += o.orbits;
  emitted += o.emitted;
  skipped_orbits += o.skipped_orbits;
  masks_covered += o.masks_covered;
  skipped_masks += o.skipped_masks;
  return *this;
}

std::vector<OrbitInfo> sieve_range(SieveTable& table, std::uint32_t begin, std::uint32_t end,
                                   SieveStats& stats) {
  const int degree = table.degree();
  const auto& map = OrbitMap::of(degree);
  std::vector<OrbitInfo> out;
  std::array<std::uint32_t, kGroupOrder> img;
  end = static_cast<std::uint32_t>(std::min<std::uint64_t>(end, table.bit_count()));

  std::uint64_t n = begin;
  while (n < end) {
    const std::size_t w = n / 64;
    std::uint64_t word = table.load_word(w) & (~std::uint64_t{0} << (n % 64));
    if (word == 0) {
      n = (w + 1) * 64;
      continue;
    }
    n = w * 64 + std::countr_zero(word);
    if (n >= end) break;
    const auto bits = static_cast<std::uint32_t>(n);

    map.images(bits, img);
    std::uint32_t min = *std::min_element(img.begin(), img.end());
    if (min < bits) {
      // Owned by the range holding `min`; leave clearing to that scan.
      ++n;
      continue;
    }
    const std::size_t size = sort_unique(img);
    for (std::size_t i = 0; i < size; ++i) table.clear(img[i]);
    OrbitInfo info = summarize(degree, std::span(img.data(), size));
    ++stats.orbits;
    stats.masks_covered += info.orbit_size;
    if (info.trivially_reducible) {
      ++stats.skipped_orbits;
      stats.skipped_masks += info.orbit_size;
    } else {
      ++stats.emitted;
      out.push_back(info);
    }
    ++n;
  }
  return out;
}

std::vector<OrbitInfo> sieve(int degree, unsigned jobs, SieveStats* stats) {
  SieveTable table(degree);
  const std::uint64_t total = table.bit_count();
  jobs = std::max(1u, jobs);
  // Many more shards than workers keeps the load even.
  const std::uint64_t shards = jobs == 1 ? 1 : std::min<std::uint64_t>(total / 64, 64ull * jobs);
  std::vector<std::vector<OrbitInfo>> parts(shards);
  std::vector<SieveStats> part_stats(shards);
  auto shard_begin = [&](std::uint64_t s) {
    return static_cast<std::uint32_t>((total * s / shards) & ~std::uint64_t{63});
  };
  auto shard_end = [&](std::uint64_t s) {
    return s + 1 == shards ? static_cast<std::uint32_t>(std::min<std::uint64_t>(total, 0xffffffffull))
                           : shard_begin(s + 1);
  };

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t s = next++; s < shards; s = next++)
      parts[s] = sieve_range(table, shard_begin(s), shard_end(s), part_stats[s]);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  std::vector<OrbitInfo> out;
  SieveStats total_stats;
  for (std::uint64_t s = 0; s < shards; ++s) {
    out.insert(out.end(), parts[s].begin(), parts[s].end());
    total_stats += part_stats[s];
  }
  if (stats) *stats = total_stats;
  return out;
}

SieveStats sieve(int degree, unsigned jobs,
                 const std::function<void(const PolyMask&, std::uint32_t)>& visitor) {
  SieveStats stats;
  for (const auto& info : sieve(degree, jobs, &stats)) visitor(info.representative, info.orbit_size);
  return stats;
}

}  // namespace f2c
