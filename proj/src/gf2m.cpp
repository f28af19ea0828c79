#include "f2curves/gf2m.hpp"

#include <array>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <string>

namespace f2c {

namespace {

int poly_degree(std::uint32_t p) { return p == 0 ? -1 : 31 - std::countl_zero(p); }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t modulus) {
  std::uint32_t r = 1;
  while (e != 0) {
    if (e & 1) r = clmul_mod(r, a, modulus);
    a = clmul_mod(a, a, modulus);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool has_full_order(std::uint32_t a, std::uint32_t group_order, std::uint32_t modulus) {
  if (a == 0) return false;
  if (pow_mod(a, group_order, modulus) != 1) return false;
  for (auto p : prime_factors(group_order))
    if (pow_mod(a, group_order / p, modulus) == 1) return false;
  return true;
}

}  // namespace

std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus) {
  std::uint64_t prod = 0;
  for (int i = 0; b >> i; ++i)
    if ((b >> i) & 1) prod ^= static_cast<std::uint64_t>(a) << i;
  const int dm = poly_degree(modulus);
  for (int d = 63 - std::countl_zero(prod | 1); d >= dm && prod != 0; --d)
    if ((prod >> d) & 1) prod ^= static_cast<std::uint64_t>(modulus) << (d - dm);
  return static_cast<std::uint32_t>(prod);
}

bool is_irreducible_gf2(std::uint32_t poly) {
  const int d = poly_degree(poly);
  if (d < 1) return false;
  for (std::uint32_t g = 2; poly_degree(g) <= d / 2; ++g)
    if (poly_mod(poly, g) == 0) return false;
  return true;
}

bool is_primitive_gf2(std::uint32_t poly) {
  if (!is_irreducible_gf2(poly)) return false;
  const int d = poly_degree(poly);
  if (d == 1) return true;  // GF(2)^* is trivial
  return has_full_order(2, (1u << d) - 1, poly);
}

std::uint32_t smallest_primitive_poly(int m) {
  if (m < 1 || m > kMaxFieldDegree)
    throw std::invalid_argument("field degree out of range: " + std::to_string(m));
  for (std::uint32_t p = 1u << m; p < (2u << m); ++p)
    if (is_primitive_gf2(p)) return p;
  throw std::logic_error("no primitive polynomial found");
}

int field_degree_of(std::uint32_t q) {
  if (q < 2 || !std::has_single_bit(q) || std::countr_zero(q) > kMaxFieldDegree)
    throw std::invalid_argument("unsupported field order: " + std::to_string(q));
  return std::countr_zero(q);
}

FieldTable::FieldTable(int m) : FieldTable(m, smallest_primitive_poly(m)) {}

FieldTable::FieldTable(int m, std::uint32_t defining_poly)
    : m_(m), q_(0), poly_(defining_poly) {
  if (m < 1 || m > kMaxFieldDegree)
    throw std::invalid_argument("field degree out of range: " + std::to_string(m));
  if (poly_degree(defining_poly) != m || !is_irreducible_gf2(defining_poly))
    throw std::invalid_argument("defining polynomial is not irreducible of degree " +
                                std::to_string(m));
  q_ = 1u << m;
  build();
}

void FieldTable::build() {
  const std::uint32_t n = q_ - 1;
  std::uint32_t gen = 1;
  if (q_ > 2) {
    gen = 2;
    while (!has_full_order(gen, n, poly_)) ++gen;
  }
  exp_.assign(2 * n, 0);
  log_.assign(q_, 0);
  std::uint32_t a = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    exp_[i] = exp_[i + n] = static_cast<Elem>(a);
    log_[a] = static_cast<std::uint16_t>(i);
    a = clmul_mod(a, gen, poly_);
  }
  if (a != 1) throw std::logic_error("generator order mismatch");
}

Elem FieldTable::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("zero has no inverse");
    return e == 0 ? 1 : 0;
  }
  const std::int64_t n = q_ - 1;
  std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (e % n)) % n;
  if (r < 0) r += n;
  return exp_[r];
}

Elem FieldTable::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem FieldTable::frobenius(Elem a, int k) const noexcept {
  for (int i = 0; i < k; ++i) a = mul(a, a);
  return a;
}

int FieldTable::subfield_degree(Elem a) const noexcept {
  for (int e = 1; e < m_; ++e)
    if (m_ % e == 0 && frobenius(a, e) == a) return e;
  return m_;
}

const FieldTable& field(int m) {
  if (m < 1 || m > kMaxFieldDegree)
    throw std::invalid_argument("field degree out of range: " + std::to_string(m));
  static std::array<std::once_flag, kMaxFieldDegree + 1> once;
  static std::array<const FieldTable*, kMaxFieldDegree + 1> cache{};
  std::call_once(once[m], [m] { cache[m] = new FieldTable(m); });
  return *cache[m];
}

}  // namespace f2c
