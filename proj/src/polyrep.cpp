#include "f2curves/polyrep.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>

namespace f2c {

// ---------------------------------------------------------------------------
// Basis

MonomialBasis::MonomialBasis(int degree) : degree_(degree) {
  index_.assign(degree + 1, std::vector<int>(degree + 1, -1));
  for (int i = degree; i >= 0; --i) {
    for (int j = degree - i; j >= 0; --j) {
      index_[i][j] = static_cast<int>(monomials_.size());
      monomials_.push_back({i, j, degree - i - j});
    }
  }
}

const MonomialBasis& MonomialBasis::of(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw std::invalid_argument("degree out of range: " + std::to_string(degree));
  static const std::vector<MonomialBasis> bases = [] {
    std::vector<MonomialBasis> v;
    for (int d = 0; d <= kMaxDegree; ++d) v.push_back(MonomialBasis(d));
    return v;
  }();
  return bases[degree];
}

int MonomialBasis::index_of(const Monomial& m) const noexcept {
  if (m.x < 0 || m.y < 0 || m.z < 0 || m.degree() != degree_) return -1;
  return index_[m.x][m.y];
}

int PolyMask::terms() const noexcept { return std::popcount(bits); }

// ---------------------------------------------------------------------------
// Encoding

PolyMask encode(std::span<const Monomial> monomials) {
  if (monomials.empty()) throw std::invalid_argument("empty monomial list");
  return encode(monomials.front().degree(), monomials);
}

PolyMask encode(int degree, std::span<const Monomial> monomials) {
  const auto& basis = MonomialBasis::of(degree);
  PolyMask f{degree, 0};
  for (const auto& m : monomials) {
    if (m.x < 0 || m.y < 0 || m.z < 0) throw std::invalid_argument("negative exponent");
    const int t = basis.index_of(m);
    if (t < 0) throw std::invalid_argument("mixed degrees in monomial list");
    if ((f.bits >> t) & 1) throw std::invalid_argument("duplicate monomial");
    f.bits |= 1u << t;
  }
  return f;
}

std::vector<Monomial> decode(const PolyMask& f) {
  const auto& basis = MonomialBasis::of(f.degree);
  std::vector<Monomial> out;
  for (std::uint32_t b = f.bits; b != 0; b &= b - 1) out.push_back(basis[std::countr_zero(b)]);
  return out;
}

namespace {

void append_power(std::string& s, char var, int e) {
  if (e == 0) return;
  if (!s.empty() && s.back() != ' ') s += '*';
  s += var;
  if (e > 1) s += '^' + std::to_string(e);
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  append_power(s, 'x', m.x);
  append_power(s, 'y', m.y);
  append_power(s, 'z', m.z);
  return s.empty() ? "1" : s;
}

}  // namespace

std::string to_text(const PolyMask& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& m : decode(f)) {
    if (!out.empty()) out += " + ";
    out += monomial_text(m);
  }
  return out;
}

std::string to_hex(const PolyMask& f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "d%d:0x%08x", f.degree, f.bits);
  return buf;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using Exponents = std::array<int, 3>;
using SparsePoly = std::map<Exponents, bool>;

constexpr int kParseDegreeCap = 2 * kMaxDegree;

void toggle(SparsePoly& p, const Exponents& e) {
  auto [it, inserted] = p.try_emplace(e, true);
  if (!inserted) p.erase(it);
}

SparsePoly sparse_mul(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly r;
  for (const auto& [ea, _] : a) {
    for (const auto& [eb, __] : b) {
      Exponents e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      if (e[0] + e[1] + e[2] > kParseDegreeCap)
        throw std::invalid_argument("polynomial degree too large");
      toggle(r, e);
    }
  }
  return r;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  SparsePoly parse() {
    SparsePoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  SparsePoly expr() {
    SparsePoly p = term();
    while (peek() == '+' || peek() == '-') {
      ++pos_;
      for (const auto& [e, _] : term()) toggle(p, e);
    }
    return p;
  }

  bool starts_factor(char c) const {
    return c == '(' || c == 'x' || c == 'y' || c == 'z' || c == 'X' || c == 'Y' || c == 'Z' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  SparsePoly term() {
    SparsePoly p = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        p = sparse_mul(p, power());
      } else if (starts_factor(c)) {
        p = sparse_mul(p, power());
      } else {
        return p;
      }
    }
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    int v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc{}) fail("integer out of range");
    return v;
  }

  SparsePoly power() {
    SparsePoly base = atom();
    if (peek() != '^') return base;
    ++pos_;
    int e = integer();
    if (e > kParseDegreeCap) fail("exponent too large");
    SparsePoly r{{Exponents{0, 0, 0}, true}};
    for (int i = 0; i < e; ++i) r = sparse_mul(r, base);
    return r;
  }

  SparsePoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      SparsePoly p = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int v = integer();
      return v % 2 ? SparsePoly{{Exponents{0, 0, 0}, true}} : SparsePoly{};
    }
    int var = -1;
    switch (c) {
      case 'x': case 'X': var = 0; break;
      case 'y': case 'Y': var = 1; break;
      case 'z': case 'Z': var = 2; break;
      default: fail(c == '\0' ? "unexpected end of input" : "unexpected character");
    }
    ++pos_;
    Exponents e{0, 0, 0};
    e[var] = 1;
    return SparsePoly{{e, true}};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyMask parse_poly(std::string_view text) {
  SparsePoly p = Parser(text).parse();
  if (p.empty()) throw std::invalid_argument("polynomial is zero");
  const auto& first = p.begin()->first;
  const int d = first[0] + first[1] + first[2];
  if (d < 1) throw std::invalid_argument("polynomial must have positive degree");
  if (d > kMaxDegree) throw std::invalid_argument("degree > 6 is not supported");
  std::vector<Monomial> monos;
  for (const auto& [e, _] : p) {
    if (e[0] + e[1] + e[2] != d) throw std::invalid_argument("polynomial is not homogeneous");
    monos.push_back({e[0], e[1], e[2]});
  }
  return encode(d, monos);
}

PolyMask parse_hex(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("bad mask literal: " + std::string(text)); };
  if (text.size() < 5 || text[0] != 'd' || text[2] != ':' || text[3] != '0' ||
      (text[4] != 'x' && text[4] != 'X'))
    fail();
  const int d = text[1] - '0';
  if (d < 1 || d > kMaxDegree) throw std::invalid_argument("degree out of range in mask literal");
  std::uint32_t bits = 0;
  auto digits = text.substr(5);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits, 16);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) fail();
  if (bits == 0 || (bits & ~MonomialBasis::of(d).full_mask()) != 0)
    throw std::invalid_argument("mask out of range for degree " + std::to_string(d));
  return {d, bits};
}

PolyMask parse_any(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.size() > 3 && text[0] == 'd' && text[2] == ':') return parse_hex(text);
  return parse_poly(text);
}

// ---------------------------------------------------------------------------
// Evaluation and calculus

void monomial_values(int degree, const FieldTable& F, const Point& p, std::span<Elem> out) {
  std::array<Elem, kMaxDegree + 1> xp{}, yp{}, zp{};
  xp[0] = yp[0] = zp[0] = 1;
  for (int e = 1; e <= degree; ++e) {
    xp[e] = F.mul(xp[e - 1], p.x);
    yp[e] = F.mul(yp[e - 1], p.y);
    zp[e] = F.mul(zp[e - 1], p.z);
  }
  const auto& basis = MonomialBasis::of(degree);
  for (int t = 0; t < basis.size(); ++t) {
    const auto& m = basis[t];
    out[t] = F.mul(F.mul(xp[m.x], yp[m.y]), zp[m.z]);
  }
}

Elem evaluate(const PolyMask& f, const FieldTable& F, const Point& p) {
  std::array<Elem, monomial_count(kMaxDegree)> values{};
  monomial_values(f.degree, F, p, values);
  Elem acc = 0;
  for (std::uint32_t b = f.bits; b != 0; b &= b - 1) acc ^= values[std::countr_zero(b)];
  return acc;
}

std::array<PolyMask, 3> partials(const PolyMask& f) {
  if (f.degree < 1) throw std::invalid_argument("partials of a constant");
  const auto& lower = MonomialBasis::of(f.degree - 1);
  std::array<PolyMask, 3> out{PolyMask{f.degree - 1, 0}, PolyMask{f.degree - 1, 0},
                              PolyMask{f.degree - 1, 0}};
  for (const auto& m : decode(f)) {
    if (m.x & 1) out[0].bits |= 1u << lower.index_of({m.x - 1, m.y, m.z});
    if (m.y & 1) out[1].bits |= 1u << lower.index_of({m.x, m.y - 1, m.z});
    if (m.z & 1) out[2].bits |= 1u << lower.index_of({m.x, m.y, m.z - 1});
  }
  return out;
}

PolyMask multiply(const PolyMask& a, const PolyMask& b) {
  const int d = a.degree + b.degree;
  if (d > kMaxDegree) throw std::invalid_argument("product degree exceeds 6");
  const auto& ba = MonomialBasis::of(a.degree);
  const auto& bb = MonomialBasis::of(b.degree);
  const auto& bp = MonomialBasis::of(d);
  PolyMask r{d, 0};
  for (std::uint32_t x = a.bits; x != 0; x &= x - 1) {
    const auto& ma = ba[std::countr_zero(x)];
    for (std::uint32_t y = b.bits; y != 0; y &= y - 1) {
      const auto& mb = bb[std::countr_zero(y)];
      r.bits ^= 1u << bp.index_of({ma.x + mb.x, ma.y + mb.y, ma.z + mb.z});
    }
  }
  return r;
}

PolyMask variable(int v) {
  if (v < 0 || v > 2) throw std::invalid_argument("variable index out of range");
  return {1, 1u << v};  // degree-1 basis is x, y, z
}

namespace {

struct TrivialMasks {
  std::uint32_t odd = 0;  // some exponent is odd
  std::array<std::uint32_t, 3> lacks{};  // variable v absent
};

const TrivialMasks& trivial_masks(int degree) {
  static const std::array<TrivialMasks, kMaxDegree + 1> table = [] {
    std::array<TrivialMasks, kMaxDegree + 1> t{};
    for (int d = 0; d <= kMaxDegree; ++d) {
      const auto& basis = MonomialBasis::of(d);
      for (int i = 0; i < basis.size(); ++i) {
        const auto& m = basis[i];
        if ((m.x | m.y | m.z) & 1) t[d].odd |= 1u << i;
        if (m.x == 0) t[d].lacks[0] |= 1u << i;
        if (m.y == 0) t[d].lacks[1] |= 1u << i;
        if (m.z == 0) t[d].lacks[2] |= 1u << i;
      }
    }
    return t;
  }();
  return table[degree];
}

}  // namespace

bool is_trivially_reducible(const PolyMask& f) {
  const auto& t = trivial_masks(f.degree);
  return (f.bits & t.odd) == 0 || (f.bits & t.lacks[0]) == 0 || (f.bits & t.lacks[1]) == 0 ||
         (f.bits & t.lacks[2]) == 0;
}

// ---------------------------------------------------------------------------
// Linear substitution

bool BitMatrix3::determinant() const noexcept {
  auto a = [this](int r, int c) { return static_cast<int>(at(r, c)); };
  const int det = a(0, 0) * (a(1, 1) * a(2, 2) + a(1, 2) * a(2, 1)) +
                  a(0, 1) * (a(1, 0) * a(2, 2) + a(1, 2) * a(2, 0)) +
                  a(0, 2) * (a(1, 0) * a(2, 1) + a(1, 1) * a(2, 0));
  return (det & 1) != 0;
}

BitMatrix3 operator*(const BitMatrix3& a, const BitMatrix3& b) noexcept {
  BitMatrix3 r{0};
  for (int i = 0; i < 3; ++i) {
    int row = 0;
    for (int k = 0; k < 3; ++k)
      if (a.at(i, k)) row ^= b.row(k);
    r.bits |= static_cast<std::uint16_t>(row << (3 * i));
  }
  return r;
}

Point apply(const Point& p, const BitMatrix3& m) noexcept {
  Point r;
  Elem* out[3] = {&r.x, &r.y, &r.z};
  for (int c = 0; c < 3; ++c) {
    Elem v = 0;
    for (int i = 0; i < 3; ++i)
      if (m.at(i, c)) v ^= p[i];
    *out[c] = v;
  }
  return r;
}

SubstitutionTable::SubstitutionTable(int degree) : stride_(monomial_count(degree)) {
  const auto& basis = MonomialBasis::of(degree);
  images_.assign(512 * static_cast<std::size_t>(stride_), 0);
  for (std::uint16_t bits = 0; bits < 512; ++bits) {
    BitMatrix3 m{bits};
    // Column c of m is the linear form substituted for variable c.
    std::array<PolyMask, 3> forms;
    for (int c = 0; c < 3; ++c) {
      forms[c] = {1, 0};
      for (int r = 0; r < 3; ++r)
        if (m.at(r, c)) forms[c].bits |= 1u << r;
    }
    for (int t = 0; t < basis.size(); ++t) {
      const auto& mono = basis[t];
      PolyMask acc{0, 1};
      const int exps[3] = {mono.x, mono.y, mono.z};
      for (int c = 0; c < 3; ++c)
        for (int e = 0; e < exps[c]; ++e) acc = multiply(acc, forms[c]);
      images_[static_cast<std::size_t>(bits) * stride_ + t] = acc.bits;
    }
  }
}

const SubstitutionTable& SubstitutionTable::of(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw std::invalid_argument("degree out of range: " + std::to_string(degree));
  static std::array<std::once_flag, kMaxDegree + 1> once;
  static std::array<const SubstitutionTable*, kMaxDegree + 1> cache{};
  std::call_once(once[degree], [degree] { cache[degree] = new SubstitutionTable(degree); });
  return *cache[degree];
}

std::uint32_t SubstitutionTable::apply(BitMatrix3 m, std::uint32_t bits) const noexcept {
  std::uint32_t r = 0;
  const std::uint32_t* row = images_.data() + static_cast<std::size_t>(m.bits) * stride_;
  for (; bits != 0; bits &= bits - 1) r ^= row[std::countr_zero(bits)];
  return r;
}

PolyMask substitute(const PolyMask& f, const BitMatrix3& m) {
  if (!m.invertible()) throw std::invalid_argument("substitution matrix is singular");
  return {f.degree, SubstitutionTable::of(f.degree).apply(m, f.bits)};
}

}  // namespace f2c
