#include "f2curves/irred.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "f2curves/count.hpp"

namespace f2c {

bool ExtPoly::is_zero() const noexcept { return leading_index() < 0; }

int ExtPoly::leading_index() const noexcept {
  for (std::size_t i = 0; i < coeff.size(); ++i)
    if (coeff[i] != 0) return static_cast<int>(i);
  return -1;
}

ExtPoly lift(const PolyMask& f) {
  ExtPoly p{f.degree, std::vector<Elem>(monomial_count(f.degree), 0)};
  for (std::uint32_t b = f.bits; b != 0; b &= b - 1) p.coeff[std::countr_zero(b)] = 1;
  return p;
}

ExtPoly multiply(const ExtPoly& a, const ExtPoly& b, const FieldTable& F) {
  const int d = a.degree + b.degree;
  const auto& ba = MonomialBasis::of(a.degree);
  const auto& bb = MonomialBasis::of(b.degree);
  const auto& bp = MonomialBasis::of(d);
  ExtPoly r{d, std::vector<Elem>(bp.size(), 0)};
  for (int i = 0; i < ba.size(); ++i) {
    if (a.coeff[i] == 0) continue;
    for (int j = 0; j < bb.size(); ++j) {
      if (b.coeff[j] == 0) continue;
      const auto& m = ba[i];
      const auto& n = bb[j];
      r.coeff[bp.index_of({m.x + n.x, m.y + n.y, m.z + n.z})] ^= F.mul(a.coeff[i], b.coeff[j]);
    }
  }
  return r;
}

std::string to_text(const ExtPoly& f, const FieldTable& F) {
  const auto& basis = MonomialBasis::of(f.degree);
  std::string out;
  for (int t = 0; t < basis.size(); ++t) {
    if (f.coeff[t] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string mono = to_text(PolyMask{f.degree, 1u << t});
    if (f.coeff[t] != 1) {
      out += "(g^" + std::to_string(F.log(f.coeff[t])) + ")";
      if (f.degree > 0) out += "*";
    }
    if (f.coeff[t] == 1 || f.degree > 0) out += mono;
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Division

namespace {

bool monomial_divides(const Monomial& a, const Monomial& b) {
  return a.x <= b.x && a.y <= b.y && a.z <= b.z;
}

void check_divisor(int deg_g, int deg_f, bool g_zero) {
  if (g_zero) throw std::invalid_argument("division by the zero polynomial");
  if (deg_g < 1 || deg_g >= deg_f) throw std::invalid_argument("divisor degree out of range");
}

}  // namespace

bool divides(const ExtPoly& g, const ExtPoly& f, const FieldTable& F) {
  check_divisor(g.degree, f.degree, g.is_zero());
  const auto& bf = MonomialBasis::of(f.degree);
  const auto& bg = MonomialBasis::of(g.degree);
  const int lead = g.leading_index();
  const Monomial lt = bg[lead];
  const Elem lc_inv = F.inv(g.coeff[lead]);
  std::vector<Elem> r = f.coeff;
  for (int t = 0; t < bf.size(); ++t) {
    if (r[t] == 0) continue;
    const Monomial m = bf[t];
    // Later steps only touch smaller monomials, so this term would stay in
    // the remainder.
    if (!monomial_divides(lt, m)) return false;
    const Monomial shift{m.x - lt.x, m.y - lt.y, m.z - lt.z};
    const Elem c = F.mul(r[t], lc_inv);
    for (int s = lead; s < bg.size(); ++s) {
      if (g.coeff[s] == 0) continue;
      const auto& n = bg[s];
      r[bf.index_of({n.x + shift.x, n.y + shift.y, n.z + shift.z})] ^= F.mul(c, g.coeff[s]);
    }
  }
  return true;
}

bool divides(const PolyMask& g, const PolyMask& f) {
  check_divisor(g.degree, f.degree, g.is_zero());
  const auto& bf = MonomialBasis::of(f.degree);
  const auto& bg = MonomialBasis::of(g.degree);
  const Monomial lt = bg[std::countr_zero(g.bits)];
  std::uint32_t r = f.bits;
  while (r != 0) {
    const Monomial m = bf[std::countr_zero(r)];
    if (!monomial_divides(lt, m)) return false;
    const Monomial shift{m.x - lt.x, m.y - lt.y, m.z - lt.z};
    for (std::uint32_t b = g.bits; b != 0; b &= b - 1) {
      const auto& n = bg[std::countr_zero(b)];
      r ^= 1u << bf.index_of({n.x + shift.x, n.y + shift.y, n.z + shift.z});
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Trial division

namespace {

std::optional<Divisor> find_divisor_f2(const PolyMask& f) {
  for (int e = 1; e <= f.degree / 2; ++e) {
    const std::uint32_t top = MonomialBasis::of(e).full_mask();
    for (std::uint32_t bits = 1; bits <= top; ++bits) {
      const PolyMask g{e, bits};
      if (divides(g, f)) return Divisor{1, lift(g)};
    }
  }
  return std::nullopt;
}

// Solves sum_i x_i cols[i] = target over GF(2); bit i of the result is x_i.
std::optional<std::uint32_t> solve_gf2(const std::vector<std::uint32_t>& cols, std::uint32_t target) {
  // Reduced basis of pivot vectors, each tagged with the columns it uses.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> basis;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    std::uint32_t v = cols[i], combo = 1u << i;
    for (const auto& [bv, bc] : basis) {
      if (v & (1u << std::countr_zero(bv))) v ^= bv, combo ^= bc;
    }
    if (v == 0) continue;
    const std::uint32_t pivot = 1u << std::countr_zero(v);
    for (auto& [bv, bc] : basis)
      if (bv & pivot) bv ^= v, bc ^= combo;
    basis.push_back({v, combo});
  }
  std::uint32_t combo = 0;
  for (const auto& [bv, bc] : basis) {
    if (target & (1u << std::countr_zero(bv))) target ^= bv, combo ^= bc;
  }
  if (target != 0) return std::nullopt;
  return combo;
}

// f = N(g) with g = g0 + w g1 over GF(4), w^2 = w + 1:
// g * conj(g) = g0^2 + g0 g1 + g1^2. For fixed g1 the left side is linear in g0.
std::optional<Divisor> find_norm_factor_f4(const PolyMask& f) {
  if (f.degree % 2 != 0) return std::nullopt;
  const int e = f.degree / 2;
  const int n = monomial_count(e);
  const std::uint32_t top = MonomialBasis::of(e).full_mask();
  std::vector<PolyMask> squares(n);
  for (int i = 0; i < n; ++i) {
    const PolyMask b{e, 1u << i};
    squares[i] = multiply(b, b);
  }
  const FieldTable& F4 = field(2);
  const Elem w = F4.generator();
  std::vector<std::uint32_t> cols(n);
  for (std::uint32_t g1 = 1; g1 <= top; ++g1) {
    const PolyMask h{e, g1};
    for (int i = 0; i < n; ++i) cols[i] = squares[i].bits ^ multiply(PolyMask{e, 1u << i}, h).bits;
    const std::uint32_t target = f.bits ^ multiply(h, h).bits;
    auto x = solve_gf2(cols, target);
    if (!x) continue;
    ExtPoly g{e, std::vector<Elem>(n, 0)};
    for (int i = 0; i < n; ++i) {
      Elem c = ((*x >> i) & 1) ? 1 : 0;
      if ((g1 >> i) & 1) c ^= w;
      g.coeff[i] = c;
    }
    return Divisor{2, g};
  }
  return std::nullopt;
}

// Visits every monic form of the given degree over F (first nonzero
// coefficient 1). Stops when visit returns true.
template <class Visit>
bool for_each_monic_form(int degree, const FieldTable& F, Visit&& visit) {
  const int n = monomial_count(degree);
  const std::uint32_t q = F.order();
  ExtPoly g{degree, std::vector<Elem>(n, 0)};
  for (int lead = 0; lead < n; ++lead) {
    std::fill(g.coeff.begin(), g.coeff.end(), Elem{0});
    g.coeff[lead] = 1;
    const int free = n - lead - 1;
    // Odometer over the coefficients after the leading one.
    for (;;) {
      if (visit(g)) return true;
      int i = 0;
      while (i < free) {
        Elem& c = g.coeff[lead + 1 + i];
        if (++c < q) break;
        c = 0;
        ++i;
      }
      if (i == free) break;
    }
  }
  return false;
}

std::optional<Divisor> find_conjugate_factor_f8(const PolyMask& f) {
  if (f.degree % 3 != 0) return std::nullopt;
  const FieldTable& F8 = field(3);
  const ExtPoly target = lift(f);
  std::optional<Divisor> found;
  for_each_monic_form(f.degree / 3, F8, [&](const ExtPoly& g) {
    const bool binary = std::all_of(g.coeff.begin(), g.coeff.end(), [](Elem c) { return c <= 1; });
    if (binary) return false;  // covered by the GF(2) search
    if (!divides(g, target, F8)) return false;
    found = Divisor{3, g};
    return true;
  });
  return found;
}

}  // namespace

std::optional<Divisor> find_divisor(const PolyMask& f, int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("irreducibility is only decided over GF(2), GF(4), GF(8)");
  if (f.is_zero()) throw std::invalid_argument("zero polynomial");
  if (auto d = find_divisor_f2(f)) return d;
  if (k == 2) return find_norm_factor_f4(f);
  if (k == 3) return find_conjugate_factor_f8(f);
  return std::nullopt;
}

bool is_irreducible(const PolyMask& f, int k) { return !find_divisor(f, k).has_value(); }

std::optional<ExtPoly> find_divisor_exhaustive(const ExtPoly& f, const FieldTable& F) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial");
  for (int e = 1; e <= f.degree / 2; ++e) {
    std::optional<ExtPoly> found;
    for_each_monic_form(e, F, [&](const ExtPoly& g) {
      if (!divides(g, f, F)) return false;
      found = g;
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::optional<SimplePoint> find_simple_point(const PolyMask& f, int max_k) {
  for (int k = 1; k <= max_k; ++k) {
    const FieldTable& F = field(k);
    std::optional<SimplePoint> hit;
    for_each_projective_point(F, [&](const Point& p) {
      if (hit) return;
      if (evaluate(f, F, p) == 0 && !gradient_vanishes(f, F, p)) hit = SimplePoint{k, p};
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

std::string to_string(Absolute a) {
  switch (a) {
    case Absolute::yes: return "yes";
    case Absolute::reducible: return "reducible";
    case Absolute::unknown: return "unknown";
  }
  return "unknown";
}

IrreducibilityStatus certify_absolute(const PolyMask& f) {
  IrreducibilityStatus s;
  if (auto d = find_divisor(f, 1)) {
    s.absolute = Absolute::reducible;
    s.witness = std::move(d);
    return s;
  }
  s.irreducible_over_f2 = true;
  s.simple_point = find_simple_point(f, 3);
  if (!s.simple_point) return s;
  const int k = s.simple_point->k;
  if (k > 1) {
    if (auto d = find_divisor(f, k)) {
      s.absolute = Absolute::reducible;
      s.witness = std::move(d);
      return s;
    }
  }
  s.absolute = Absolute::yes;
  s.certificate_field = k;
  return s;
}

}  // namespace f2c
