#include "f2curves/count.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <map>
#include <stdexcept>
#include <thread>

namespace f2c {

std::vector<Point> projective_points(const FieldTable& F) {
  std::vector<Point> out;
  const std::size_t q = F.order();
  out.reserve(q * q + q + 1);
  for_each_projective_point(F, [&](const Point& p) { out.push_back(p); });
  return out;
}

Point normalize(const FieldTable& F, const Point& p) {
  const Elem lead = p.x != 0 ? p.x : (p.y != 0 ? p.y : p.z);
  if (lead == 0) throw std::invalid_argument("(0, 0, 0) is not a projective point");
  const Elem s = F.inv(lead);
  return {F.mul(p.x, s), F.mul(p.y, s), F.mul(p.z, s)};
}

std::array<Elem, 3> gradient(const PolyMask& f, const FieldTable& F, const Point& p) {
  auto d = partials(f);
  return {evaluate(d[0], F, p), evaluate(d[1], F, p), evaluate(d[2], F, p)};
}

bool gradient_vanishes(const PolyMask& f, const FieldTable& F, const Point& p) {
  for (const auto& g : partials(f))
    if (evaluate(g, F, p) != 0) return false;
  return true;
}

namespace {

constexpr int kMaxTerms = monomial_count(kMaxDegree);

struct CurveState {
  PolyMask f;
  std::array<PolyMask, 3> grad;
  std::array<int, kMaxTerms> terms{};
  int n_terms = 0;
  PointCount result;
};

/// Monomial values along one line of P^2, one table row per basis monomial.
class RowTable {
 public:
  RowTable(const FieldTable& F, int degree)
      : F_(F), degree_(degree), q_(F.order()), basis_(MonomialBasis::of(degree)) {
    values_.assign(static_cast<std::size_t>(basis_.size()) * q_, 0);
    // zpow_[k * q + z] = z^k
    zpow_.assign(static_cast<std::size_t>(degree + 1) * q_, 0);
    for (std::uint32_t z = 0; z < q_; ++z) {
      Elem v = 1;
      for (int k = 0; k <= degree; ++k) {
        zpow_[k * q_ + z] = v;
        v = F.mul(v, static_cast<Elem>(z));
      }
    }
  }

  /// Points (1, c, z), z in F_q.
  void load_affine_row(Elem c) {
    std::array<Elem, kMaxDegree + 1> cpow{};
    cpow[0] = 1;
    for (int j = 1; j <= degree_; ++j) cpow[j] = F_.mul(cpow[j - 1], c);
    for (int t = 0; t < basis_.size(); ++t) {
      const auto& m = basis_[t];
      Elem* out = row(t);
      const Elem* zp = &zpow_[m.z * q_];
      const Elem s = cpow[m.y];
      if (s == 0) {
        std::fill(out, out + q_, Elem{0});
      } else if (s == 1) {
        std::copy(zp, zp + q_, out);
      } else {
        for (std::uint32_t z = 0; z < q_; ++z) out[z] = F_.mul(s, zp[z]);
      }
    }
    length_ = q_;
  }

  /// Points (0, 1, z), z in F_q.
  void load_infinite_row() {
    for (int t = 0; t < basis_.size(); ++t) {
      const auto& m = basis_[t];
      Elem* out = row(t);
      if (m.x != 0)
        std::fill(out, out + q_, Elem{0});
      else
        std::copy(&zpow_[m.z * q_], &zpow_[m.z * q_] + q_, out);
    }
    length_ = q_;
  }

  /// The single point (0, 0, 1).
  void load_last_point() {
    for (int t = 0; t < basis_.size(); ++t) {
      const auto& m = basis_[t];
      row(t)[0] = (m.x == 0 && m.y == 0) ? 1 : 0;
    }
    length_ = 1;
  }

  std::uint32_t length() const noexcept { return length_; }
  const Elem* row(int t) const noexcept { return values_.data() + static_cast<std::size_t>(t) * q_; }

  /// acc[z] = f(point z) for the loaded line.
  void evaluate(const CurveState& c, Elem* acc) const noexcept {
    const std::uint32_t n = length_;
    if (c.n_terms == 0) {
      std::fill(acc, acc + n, Elem{0});
      return;
    }
    std::memcpy(acc, row(c.terms[0]), n * sizeof(Elem));
    int k = 1;
    for (; k + 4 <= c.n_terms; k += 4) {
      const Elem* a = row(c.terms[k]);
      const Elem* b = row(c.terms[k + 1]);
      const Elem* d = row(c.terms[k + 2]);
      const Elem* e = row(c.terms[k + 3]);
      for (std::uint32_t z = 0; z < n; ++z) acc[z] ^= a[z] ^ b[z] ^ d[z] ^ e[z];
    }
    for (; k < c.n_terms; ++k) {
      const Elem* a = row(c.terms[k]);
      for (std::uint32_t z = 0; z < n; ++z) acc[z] ^= a[z];
    }
  }

 private:
  Elem* row(int t) noexcept { return values_.data() + static_cast<std::size_t>(t) * q_; }

  const FieldTable& F_;
  int degree_;
  std::uint32_t q_;
  const MonomialBasis& basis_;
  std::vector<Elem> values_;
  std::vector<Elem> zpow_;
  std::uint32_t length_ = 0;
};

bool partials_vanish(const CurveState& c, const FieldTable& F, const Point& p) {
  for (const auto& g : c.grad)
    if (!g.is_zero() && evaluate(g, F, p) != 0) return false;
  return true;
}

// Calls fn(i) for every i < n with acc[i] == 0.
template <class Fn>
void for_each_zero(const Elem* acc, std::uint32_t n, Fn&& fn) {
  std::uint32_t i = 0;
  constexpr std::uint64_t kLow = 0x0001000100010001ull;
  constexpr std::uint64_t kHigh = 0x8000800080008000ull;
  for (; i + 4 <= n; i += 4) {
    std::uint64_t v;
    std::memcpy(&v, acc + i, sizeof v);
    if (((v - kLow) & ~v & kHigh) == 0) continue;
    for (std::uint32_t k = 0; k < 4; ++k)
      if (acc[i + k] == 0) fn(i + k);
  }
  for (; i < n; ++i)
    if (acc[i] == 0) fn(i);
}

void count_same_degree(std::span<CurveState> curves, const FieldTable& F) {
  if (curves.empty()) return;
  const int degree = curves.front().f.degree;
  const std::uint32_t q = F.order();
  RowTable table(F, degree);
  std::vector<Elem> acc(q);

  auto scan = [&](auto make_point) {
    for (auto& c : curves) {
      table.evaluate(c, acc.data());
      for_each_zero(acc.data(), table.length(), [&](std::uint32_t z) {
        const Point p = make_point(z);
        ++c.result.total;
        if (partials_vanish(c, F, p))
          c.result.singular_points.push_back(p);
        else
          ++c.result.smooth;
      });
    }
  };

  for (std::uint32_t y = 0; y < q; ++y) {
    table.load_affine_row(static_cast<Elem>(y));
    scan([y](std::uint32_t z) { return Point{1, static_cast<Elem>(y), static_cast<Elem>(z)}; });
  }
  table.load_infinite_row();
  scan([](std::uint32_t z) { return Point{0, 1, static_cast<Elem>(z)}; });
  table.load_last_point();
  scan([](std::uint32_t) { return Point{0, 0, 1}; });
}

CurveState make_state(const PolyMask& f, std::uint32_t q) {
  if (f.is_zero()) throw std::invalid_argument("cannot count points of the zero polynomial");
  CurveState c;
  c.f = f;
  c.grad = partials(f);
  for (std::uint32_t b = f.bits; b != 0; b &= b - 1) c.terms[c.n_terms++] = std::countr_zero(b);
  c.result.q = q;
  return c;
}

}  // namespace

PointCount count_points(const PolyMask& f, const FieldTable& F) {
  CurveState c = make_state(f, F.order());
  count_same_degree(std::span(&c, 1), F);
  return std::move(c.result);
}

std::vector<PointCount> count_points_batch(std::span<const PolyMask> curves, const FieldTable& F,
                                           unsigned jobs) {
  std::vector<CurveState> states;
  states.reserve(curves.size());
  for (const auto& f : curves) states.push_back(make_state(f, F.order()));

  // Group by degree, keeping positions.
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < states.size(); ++i) by_degree[states[i].f.degree].push_back(i);

  for (auto& [degree, idx] : by_degree) {
    std::vector<CurveState> group;
    group.reserve(idx.size());
    for (auto i : idx) group.push_back(std::move(states[i]));

    const std::size_t n = group.size();
    const unsigned workers = static_cast<unsigned>(std::clamp<std::size_t>(jobs, 1, n));
    if (workers == 1) {
      count_same_degree(group, F);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] { count_same_degree(std::span(group).subspan(lo, hi - lo), F); });
      }
    }
    for (std::size_t k = 0; k < idx.size(); ++k) states[idx[k]] = std::move(group[k]);
  }

  std::vector<PointCount> out;
  out.reserve(states.size());
  for (auto& s : states) out.push_back(std::move(s.result));
  return out;
}

}  // namespace f2c
