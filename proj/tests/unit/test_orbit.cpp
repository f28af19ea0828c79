#include <stdexcept>
#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "f2curves/count.hpp"
#include "f2curves/orbit.hpp"

using namespace f2c;

namespace {

int rank_gf2(std::vector<std::uint32_t> rows) {
  int rank = 0;
  for (int bit = 31; bit >= 0; --bit) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](std::uint32_t r) { return r >> bit & 1; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (static_cast<int>(i) != rank && (rows[i] >> bit & 1)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

// Burnside: substitutions act linearly on the mask space, so the masks
// fixed by g form the kernel of (S_g - I).
std::uint64_t burnside_nonzero_orbits(int d) {
  const int n = monomial_count(d);
  std::uint64_t fixed_total = 0;
  for (const auto& g : gl3()) {
    std::vector<std::uint32_t> cols(n);
    for (int t = 0; t < n; ++t) cols[t] = substitute(PolyMask{d, 1u << t}, g).bits ^ (1u << t);
    fixed_total += std::uint64_t{1} << (n - rank_gf2(cols));
  }
  REQUIRE(fixed_total % kGroupOrder == 0);
  return fixed_total / kGroupOrder - 1;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

TEST_CASE("GL3(F2) is a group of order 168") {
  const auto& G = gl3();
  CHECK(G.size() == 168);
  CHECK(G == enumerate_gl3());
  const std::set<BitMatrix3> members(G.begin(), G.end());
  CHECK(members.size() == 168);
  CHECK(members.count(BitMatrix3::identity()));
  for (const auto& a : G) {
    REQUIRE(a.invertible());
    bool has_inverse = false;
    for (const auto& b : G) {
      REQUIRE(members.count(a * b));
      has_inverse |= (a * b == BitMatrix3::identity());
    }
    REQUIRE(has_inverse);
  }
  int invertible = 0;
  for (std::uint16_t bits = 0; bits < 512; ++bits) invertible += BitMatrix3{bits}.invertible();
  CHECK(invertible == 168);
}

TEST_CASE("orbit map agrees with substitution") {
  std::mt19937 rng(23);
  for (int d = 1; d <= 6; ++d) {
    const auto& map = OrbitMap::of(d);
    std::array<std::uint32_t, kGroupOrder> out{};
    for (int s = 0; s < 50; ++s) {
      const std::uint32_t bits = (static_cast<std::uint32_t>(rng()) & MonomialBasis::of(d).full_mask()) | 1u;
      map.images(bits, out);
      for (int g = 0; g < kGroupOrder; ++g) REQUIRE(out[g] == substitute(PolyMask{d, bits}, gl3()[g]).bits);
    }
  }
}

TEST_CASE("orbit counts: union-find and Burnside oracles against the sieve") {
  for (int d = 1; d <= 3; ++d) {
    const std::uint32_t n = MonomialBasis::of(d).full_mask() + 1;
    UnionFind uf(n);
    for (std::uint32_t bits = 1; bits < n; ++bits)
      for (const auto& g : gl3()) uf.unite(bits, substitute(PolyMask{d, bits}, g).bits);
    std::set<std::uint32_t> roots;
    for (std::uint32_t bits = 1; bits < n; ++bits) roots.insert(uf.find(bits));

    SieveStats stats;
    sieve(d, 1, &stats);
    CHECK(stats.orbits == roots.size());
    CHECK(stats.orbits == burnside_nonzero_orbits(d));
    CHECK(stats.masks_covered == n - 1);
  }
  for (int d = 4; d <= 5; ++d) {
    SieveStats stats;
    sieve(d, 1, &stats);
    CHECK(stats.orbits == burnside_nonzero_orbits(d));
  }
  CHECK(burnside_nonzero_orbits(4) == 279);
  CHECK(burnside_nonzero_orbits(5) == 13055);
  CHECK(burnside_nonzero_orbits(6) == 1606431);
}

TEST_CASE("sieve output is independent of thread count") {
  SieveStats a, b;
  const auto one = sieve(4, 1, &a);
  const auto three = sieve(4, 3, &b);
  REQUIRE(one.size() == three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].representative == three[i].representative);
    CHECK(one[i].orbit_size == three[i].orbit_size);
  }
  CHECK(a.emitted == b.emitted);
  CHECK(a.skipped_orbits == b.skipped_orbits);
  CHECK(a.orbits == 279);
  CHECK(a.skipped_orbits == 66);
}

TEST_CASE("emitted orbits are complete and never trivially reducible") {
  const auto found = sieve(4, 1);
  std::uint64_t covered = 0;
  for (const auto& info : found) {
    const auto orbit = orbit_of(info.representative);
    CHECK(orbit.size() == info.orbit_size);
    CHECK(168 % orbit.size() == 0);
    CHECK(orbit.front().bits == info.min_member);
    CHECK(select_representative(orbit) == info.representative);
    for (const auto& member : orbit) REQUIRE_FALSE(is_trivially_reducible(member));
    covered += orbit.size();
  }
  CHECK(covered < (1u << 15));
}

TEST_CASE("representative selection prefers fewer terms, then smaller masks") {
  const auto orbit = orbit_of(parse_poly("x^3 + y^3 + z^3"));
  const auto rep = select_representative(orbit);
  for (const auto& m : orbit) {
    CHECK(rep.terms() <= m.terms());
    if (m.terms() == rep.terms()) CHECK(rep.bits <= m.bits);
  }
  const auto info = describe_orbit(parse_poly("x*y*z + x^3"));
  CHECK(info.trivially_reducible);
}

TEST_CASE("point counts are invariant on orbits") {
  std::mt19937 rng(29);
  for (int m : {3, 4, 6}) {
    const FieldTable& F = field(m);
    for (int s = 0; s < 40; ++s) {
      const int d = 3 + s % 4;
      const PolyMask f{d, (static_cast<std::uint32_t>(rng()) & MonomialBasis::of(d).full_mask()) | 1u};
      const auto base = count_points(f, F);
      const auto g = gl3()[rng() % kGroupOrder];
      const auto moved = count_points(substitute(f, g), F);
      CHECK(base.total == moved.total);
      CHECK(base.smooth == moved.smooth);
      CHECK(base.singular_points.size() == moved.singular_points.size());
    }
  }
}
