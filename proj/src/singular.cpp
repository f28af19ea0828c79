#include "f2curves/singular.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "f2curves/count.hpp"

namespace f2c {

namespace {

// Univariate polynomials over F, coefficient of w^i at index i, trimmed.
using Upoly = std::vector<Elem>;

void trim(Upoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Elem upoly_eval(const FieldTable& F, const Upoly& p, Elem w) {
  Elem acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = F.add(F.mul(acc, w), *it);
  return acc;
}

// Divides p by (w - t) assuming t is a root.
Upoly deflate(const FieldTable& F, const Upoly& p, Elem t) {
  const int n = static_cast<int>(p.size()) - 1;
  Upoly q(n, 0);
  Elem carry = 0;
  for (int i = n; i >= 1; --i) {
    carry = F.add(p[i], F.mul(carry, t));
    q[i - 1] = carry;
  }
  return q;
}

Upoly derivative(const Upoly& p) {
  Upoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back((i & 1) ? p[i] : 0);
  trim(d);
  return d;
}

Upoly upoly_mod(const FieldTable& F, Upoly a, const Upoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const Elem lead_inv = F.inv(b.back());
  trim(a);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const Elem c = F.mul(a.back(), lead_inv);
    for (int i = 0; i <= db; ++i) a[shift + i] = F.add(a[shift + i], F.mul(c, b[i]));
    trim(a);
  }
  return a;
}

Upoly upoly_gcd(const FieldTable& F, Upoly a, Upoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Upoly r = upoly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// form(1, w) as a polynomial in w: coefficient of w^j is coeff[m - j].
Upoly dehomogenize(const BinaryForm& form) {
  const int m = form.degree();
  Upoly g(m + 1);
  for (int j = 0; j <= m; ++j) g[j] = form.coeff[m - j];
  trim(g);
  return g;
}

// Power of u dividing the form.
int u_multiplicity(const BinaryForm& form) {
  int a = 0;
  while (a < static_cast<int>(form.coeff.size()) && form.coeff[a] == 0) ++a;
  return a;
}

bool has_binary_coefficients(const BinaryForm& form) {
  return std::all_of(form.coeff.begin(), form.coeff.end(), [](Elem c) { return c <= 1; });
}

// Factor-degree / multiplicity pairs, sorted.
using Shape = std::vector<std::pair<int, int>>;

// Irreducible polynomials over GF(2) of degree 1..3 as bit masks.
constexpr std::uint32_t kIrreducibleF2[] = {0b10, 0b11, 0b111, 0b1011, 0b1101};

int bit_degree(std::uint32_t p) { return p == 0 ? -1 : 31 - __builtin_clz(p); }

std::uint32_t f2_mod(std::uint32_t a, std::uint32_t b) {
  const int db = bit_degree(b);
  for (int da = bit_degree(a); da >= db; da = bit_degree(a)) a ^= b << (da - db);
  return a;
}

std::uint32_t f2_div(std::uint32_t a, std::uint32_t b) {
  std::uint32_t q = 0;
  const int db = bit_degree(b);
  for (int da = bit_degree(a); da >= db; da = bit_degree(a)) {
    q |= 1u << (da - db);
    a ^= b << (da - db);
  }
  return q;
}

// Complete factorization shape over GF(2) of a form with 0/1 coefficients.
Shape shape_over_f2(const BinaryForm& form) {
  Shape shape;
  const int a = u_multiplicity(form);
  if (a > 0) shape.push_back({1, a});
  std::uint32_t g = 0;
  for (int j = 0; j <= form.degree(); ++j)
    if (form.coeff[form.degree() - j]) g |= 1u << j;
  // Forms have degree <= 6, so whatever survives division by every
  // irreducible of degree <= 3 is itself irreducible.
  for (auto p : kIrreducibleF2) {
    int e = 0;
    while (bit_degree(g) >= bit_degree(p) && f2_mod(g, p) == 0) {
      g = f2_div(g, p);
      ++e;
    }
    if (e > 0) shape.push_back({bit_degree(p), e});
  }
  if (bit_degree(g) >= 1) shape.push_back({bit_degree(g), 1});
  std::sort(shape.begin(), shape.end());
  return shape;
}

}  // namespace

// ---------------------------------------------------------------------------

bool BinaryForm::is_zero() const noexcept {
  return std::all_of(coeff.begin(), coeff.end(), [](Elem c) { return c == 0; });
}

Elem BinaryForm::evaluate(const FieldTable& F, Elem u, Elem v) const {
  const int m = degree();
  Elem acc = 0;
  for (int i = 0; i <= m; ++i) {
    if (coeff[i] == 0) continue;
    acc ^= F.mul(coeff[i], F.mul(F.pow(u, i), F.pow(v, m - i)));
  }
  return acc;
}

std::vector<FormRoot> factor_binary_form(const BinaryForm& form, const FieldTable& F) {
  if (form.coeff.empty() || form.is_zero()) throw std::invalid_argument("zero binary form");
  std::vector<FormRoot> roots;
  const int a = u_multiplicity(form);
  if (a > 0) roots.push_back({0, 1, a});
  Upoly g = dehomogenize(form);
  for (std::uint32_t t = 0; t < F.order() && g.size() > 1; ++t) {
    int e = 0;
    while (g.size() > 1 && upoly_eval(F, g, static_cast<Elem>(t)) == 0) {
      g = deflate(F, g, static_cast<Elem>(t));
      ++e;
    }
    if (e > 0) roots.push_back({1, static_cast<Elem>(t), e});
  }
  return roots;
}

bool is_squarefree(const BinaryForm& form, const FieldTable& F) {
  if (u_multiplicity(form) > 1) return false;
  Upoly g = dehomogenize(form);
  if (g.size() <= 2) return true;
  Upoly d = derivative(g);
  if (d.empty()) return false;  // g is a square
  return upoly_gcd(F, g, d).size() == 1;
}

// ---------------------------------------------------------------------------

int LocalExpansion::order() const noexcept {
  for (int m = 0; m <= degree; ++m)
    for (int s = 0; s <= m; ++s)
      if (at(s, m - s) != 0) return m;
  return degree + 1;
}

BinaryForm LocalExpansion::part(int m) const {
  BinaryForm form;
  form.coeff.resize(m + 1);
  for (int i = 0; i <= m; ++i) form.coeff[i] = at(i, m - i);
  return form;
}

LocalExpansion local_expansion(const PolyMask& f, const FieldTable& F, const Point& p) {
  const Point n = normalize(F, p);
  const int chart = n.x != 0 ? 0 : (n.y != 0 ? 1 : 2);
  int iu = -1, iv = -1;
  for (int i = 0; i < 3; ++i) {
    if (i == chart) continue;
    (iu < 0 ? iu : iv) = i;
  }
  const Elem pu = n[iu], pv = n[iv];
  const int d = f.degree;
  LocalExpansion e;
  e.degree = d;
  e.coeff.assign((d + 1) * (d + 1), 0);
  for (const auto& mono : decode(f)) {
    const int exps[3] = {mono.x, mono.y, mono.z};
    const int eu = exps[iu], ev = exps[iv];
    // (u + pu)^eu (v + pv)^ev; binomials mod 2 by Lucas: C(n, s) odd iff s is a submask of n.
    for (int s = 0; s <= eu; ++s) {
      if ((s & eu) != s) continue;
      const Elem cu = F.pow(pu, eu - s);
      if (cu == 0) continue;
      for (int t = 0; t <= ev; ++t) {
        if ((t & ev) != t) continue;
        const Elem cv = F.pow(pv, ev - t);
        if (cv == 0) continue;
        e.coeff[s * (d + 1) + t] ^= F.mul(cu, cv);
      }
    }
  }
  return e;
}

int multiplicity_at(const PolyMask& f, const FieldTable& F, const Point& p) {
  if (evaluate(f, F, p) != 0) throw std::invalid_argument("point is not on the curve");
  return local_expansion(f, F, p).order();
}

BinaryForm tangent_cone_at(const PolyMask& f, const FieldTable& F, const Point& p) {
  if (evaluate(f, F, p) != 0) throw std::invalid_argument("point is not on the curve");
  const auto e = local_expansion(f, F, p);
  const int m = e.order();
  if (m < 2) throw std::invalid_argument("tangent cone requested at a smooth point");
  return e.part(m);
}

std::string cone_type(const BinaryForm& form, const FieldTable& F) {
  const int m = form.degree();
  Shape shape;
  bool known = true;
  if (has_binary_coefficients(form)) {
    shape = shape_over_f2(form);
  } else {
    int rational = 0;
    for (const auto& r : factor_binary_form(form, F)) {
      shape.push_back({1, r.multiplicity});
      rational += r.multiplicity;
    }
    const int rest = m - rational;
    if (rest == 2 || rest == 3)
      shape.push_back({rest, 1});
    else if (rest != 0)
      known = false;
    std::sort(shape.begin(), shape.end());
  }
  if (known) {
    static const std::map<Shape, std::string> names = {
        {{{1, 1}, {1, 1}}, "u v"},
        {{{2, 1}}, "u^2+u v+v^2"},
        {{{1, 1}, {1, 2}}, "u v^2"},
        {{{1, 1}, {2, 1}}, "(u+v)(u^2+u v+v^2)"},
        {{{1, 1}, {1, 1}, {1, 1}}, "u v(u+v)"},
    };
    if (auto it = names.find(shape); it != names.end()) return it->second;
  }
  return "deg=" + std::to_string(m) + " squarefree=" + (is_squarefree(form, F) ? "1" : "0");
}

int point_field_degree(const FieldTable& F, const Point& p) {
  int k = 1;
  for (int i = 0; i < 3; ++i) k = std::lcm(k, F.subfield_degree(p[i]));
  return k;
}

std::string point_text(const Point& p) {
  return "(" + std::to_string(p.x) + ":" + std::to_string(p.y) + ":" + std::to_string(p.z) + ")";
}

SingularPoint analyze_singular_point(const PolyMask& f, const FieldTable& F, const Point& p) {
  SingularPoint s;
  s.point = normalize(F, p);
  s.q = F.order();
  s.k = point_field_degree(F, s.point);
  if (evaluate(f, F, s.point) != 0) throw std::invalid_argument("point is not on the curve");
  const auto e = local_expansion(f, F, s.point);
  s.multiplicity = e.order();
  if (s.multiplicity < 2) throw std::invalid_argument("point is smooth");
  s.tangent_cone = e.part(s.multiplicity);
  s.type = cone_type(s.tangent_cone, F);
  s.ordinary = is_squarefree(s.tangent_cone, F);
  return s;
}

BlowupEstimate blowup_points_estimate(const SingularPoint& s, const FieldTable& F) {
  BlowupEstimate b;
  for (const auto& r : factor_binary_form(s.tangent_cone, F)) {
    ++b.rational_directions;
    if (r.multiplicity == 1) ++b.lower;
  }
  b.exact_known = is_squarefree(s.tangent_cone, F);
  return b;
}

// ---------------------------------------------------------------------------
// Blowups

namespace {

// Sparse bivariate polynomial, key (i, j) for a^i b^j.
using Bivariate = std::map<std::pair<int, int>, Elem>;

int order_of(const Bivariate& g) {
  int m = -1;
  for (const auto& [e, c] : g)
    if (c != 0 && (m < 0 || e.first + e.second < m)) m = e.first + e.second;
  return m;
}

void add_term(Bivariate& g, int i, int j, Elem c) {
  if (c == 0) return;
  Elem& slot = g[{i, j}];
  slot ^= c;
  if (slot == 0) g.erase({i, j});
}

// Strict transform in the chart b = a w, moved so the direction (1 : t)
// sits at the origin: g(a, a (w + t)) / a^m.
Bivariate blow_up_affine(const FieldTable& F, const Bivariate& g, int m, Elem t) {
  Bivariate out;
  for (const auto& [e, c] : g) {
    const auto [i, j] = e;
    for (int s = 0; s <= j; ++s) {
      if ((s & j) != s) continue;
      add_term(out, i + j - m, s, F.mul(c, F.pow(t, j - s)));
    }
  }
  return out;
}

// Chart a = b s for the direction (0 : 1): g(b s, b) / b^m, variables (s, b).
Bivariate blow_up_vertical(const Bivariate& g, int m) {
  Bivariate out;
  for (const auto& [e, c] : g) add_term(out, e.first, e.first + e.second - m, c);
  return out;
}

constexpr int kMaxBlowupDepth = 16;

void resolve(const FieldTable& F, const Bivariate& g, int depth, int delta_cap, Resolution& res) {
  const int m = order_of(g);
  if (m <= 1) {
    ++res.rational_places;
    return;
  }
  res.delta += m * (m - 1) / 2;
  if (depth >= kMaxBlowupDepth || res.delta > delta_cap) {
    res.complete = false;
    return;
  }
  BinaryForm cone;
  cone.coeff.assign(m + 1, 0);
  for (const auto& [e, c] : g)
    if (e.first + e.second == m) cone.coeff[e.first] = c;

  // Strip the rational roots; any repeated factor left over needs a larger
  // field.
  int rational = 0;
  const auto roots = factor_binary_form(cone, F);
  for (const auto& r : roots) rational += r.multiplicity;
  if (rational < m) {
    Upoly rest = dehomogenize(cone);
    for (const auto& r : roots)
      if (r.u == 1)
        for (int k = 0; k < r.multiplicity; ++k) rest = deflate(F, rest, r.v);
    trim(rest);
    if (rest.size() > 2) {
      const Upoly d = derivative(rest);
      if (d.empty() || upoly_gcd(F, rest, d).size() > 1) res.complete = false;
    }
  }
  for (const auto& r : roots) {
    if (r.multiplicity == 1) {
      ++res.rational_places;
      continue;
    }
    const Bivariate next = r.u == 0 ? blow_up_vertical(g, m) : blow_up_affine(F, g, m, r.v);
    resolve(F, next, depth + 1, delta_cap, res);
  }
}

}  // namespace

Resolution resolve_singularity(const PolyMask& f, const FieldTable& F, const Point& p) {
  if (evaluate(f, F, p) != 0) throw std::invalid_argument("point is not on the curve");
  const auto e = local_expansion(f, F, p);
  Bivariate g;
  for (int s = 0; s <= e.degree; ++s)
    for (int t = 0; t <= e.degree; ++t)
      if (e.at(s, t) != 0) g[{s, t}] = e.at(s, t);
  Resolution res;
  // An irreducible plane curve has sum of deltas at most its plane genus;
  // anything beyond means a multiple component.
  resolve(F, g, 0, (f.degree - 1) * (f.degree - 2) / 2, res);
  return res;
}

bool check_multiplicity_sum(std::span<const int> multiplicities, int degree) {
  if (multiplicities.size() < 2)
    throw std::invalid_argument("multiplicity-sum bound needs at least two singular points");
  const int r = static_cast<int>(multiplicities.size());
  const int sum = std::accumulate(multiplicities.begin(), multiplicities.end(), 0);
  const int limit = (degree / 2) * r + (degree % 2 == 1 ? 1 : 0);
  return sum <= limit;
}

}  // namespace f2c
