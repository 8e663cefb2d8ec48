#include "iplr/gfpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace iplr {

namespace {

void check_base(uint32_t b) {
  if (!is_prime_base(b)) {
    throw std::invalid_argument("base must be a prime <= 257");
  }
}

void check_same_base(const Poly& a, const Poly& b) {
  if (a.base() != b.base()) {
    throw std::invalid_argument("mixed coefficient fields");
  }
}

// Multiplicative inverse in F_b via Fermat (b prime, a != 0).
uint32_t field_inv(uint32_t a, uint32_t b) {
  uint32_t r = 1, base = a % b;
  uint32_t e = b - 2;
  while (e) {
    if (e & 1) r = r * base % b;
    base = base * base % b;
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_base(uint32_t b) {
  if (b < 2 || b > 257) return false;
  for (uint32_t d = 2; d * d <= b; ++d) {
    if (b % d == 0) return false;
  }
  return true;
}

Poly::Poly(uint32_t base) : base_(base) { check_base(base); }

Poly::Poly(uint32_t base, std::vector<uint16_t> coeffs)
    : base_(base), coeffs_(std::move(coeffs)) {
  check_base(base);
  for (auto& c : coeffs_) {
    if (c >= base_) {
      throw std::invalid_argument("coefficient out of field range");
    }
  }
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int Poly::degree() const {
  if (coeffs_.empty()) return kDegNegInf;
  return static_cast<int>(coeffs_.size()) - 1;
}

uint16_t Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<size_t>(i)];
}

bool Poly::operator==(const Poly& o) const {
  return base_ == o.base_ && coeffs_ == o.coeffs_;
}

std::string Poly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    uint16_t c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i > 0) {
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Poly poly_from_int(uint64_t n, uint32_t base) {
  check_base(base);
  std::vector<uint16_t> c;
  while (n) {
    c.push_back(static_cast<uint16_t>(n % base));
    n /= base;
  }
  return Poly(base, std::move(c));
}

uint64_t poly_to_int(const Poly& p) {
  uint64_t n = 0;
  for (int i = p.degree(); i >= 0; --i) {
    n = n * p.base() + p.coeff(i);
  }
  return n;
}

Poly poly_add(const Poly& a, const Poly& b) {
  check_same_base(a, b);
  const uint32_t q = a.base();
  std::vector<uint16_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<uint16_t>((a.coeff(static_cast<int>(i)) +
                                  b.coeff(static_cast<int>(i))) % q);
  }
  return Poly(q, std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b) {
  check_same_base(a, b);
  const uint32_t q = a.base();
  std::vector<uint16_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<uint16_t>((a.coeff(static_cast<int>(i)) + q -
                                  b.coeff(static_cast<int>(i))) % q);
  }
  return Poly(q, std::move(c));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  check_same_base(a, b);
  const uint32_t q = a.base();
  if (a.is_zero() || b.is_zero()) return Poly(q);
  std::vector<uint32_t> acc(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs().size(); ++j) {
      acc[i + j] = (acc[i + j] + uint32_t(a.coeffs()[i]) * b.coeffs()[j]) % q;
    }
  }
  std::vector<uint16_t> c(acc.begin(), acc.end());
  return Poly(q, std::move(c));
}

PolyDivMod poly_divmod(const Poly& a, const Poly& p) {
  check_same_base(a, p);
  if (p.is_zero()) throw std::invalid_argument("zero modulus");
  const uint32_t q = a.base();
  const int dp = p.degree();
  if (a.degree() < dp) return {Poly(q), a};
  const uint32_t lead_inv = field_inv(p.coeff(dp), q);
  std::vector<uint16_t> rem(a.coeffs());
  std::vector<uint16_t> quot(static_cast<size_t>(a.degree() - dp) + 1, 0);
  for (int i = a.degree(); i >= dp; --i) {
    uint32_t c = rem[static_cast<size_t>(i)];
    if (c == 0) continue;
    uint32_t f = c * lead_inv % q;
    quot[static_cast<size_t>(i - dp)] = static_cast<uint16_t>(f);
    for (int j = 0; j <= dp; ++j) {
      size_t idx = static_cast<size_t>(i - dp + j);
      uint32_t v = (rem[idx] + q * q - f * p.coeff(j) % q) % q;
      rem[idx] = static_cast<uint16_t>(v);
    }
  }
  rem.resize(static_cast<size_t>(dp > 0 ? dp : 0));
  return {Poly(q, std::move(quot)), Poly(q, std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& p) { return poly_divmod(a, p).rem; }

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("zero modulus");
  return poly_mod(poly_mul(a, b), p);
}

Poly poly_pow_mod(const Poly& a, uint64_t e, const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("zero modulus");
  Poly result(a.base(), {1});
  result = poly_mod(result, p);
  Poly base = poly_mod(a, p);
  while (e) {
    if (e & 1) result = poly_mul_mod(result, base, p);
    base = poly_mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b);
    a = b;
    b = r;
  }
  // Normalize to monic so the gcd is canonical.
  if (!a.is_zero() && a.coeff(a.degree()) != 1) {
    uint32_t q = a.base();
    uint32_t inv = field_inv(a.coeff(a.degree()), q);
    std::vector<uint16_t> c(a.coeffs());
    for (auto& v : c) v = static_cast<uint16_t>(v * inv % q);
    a = Poly(q, std::move(c));
  }
  return a;
}

bool is_irreducible(const Poly& p) {
  const int n = p.degree();
  if (n <= 0) return false;  // constants and zero are not irreducible
  if (n == 1) return true;
  const uint32_t b = p.base();
  const Poly x = poly_from_int(b, b);  // the monomial x

  // x^(b^k) mod p by k successive Frobenius steps (each one b-th power).
  auto frobenius_iterate = [&](uint32_t k) {
    Poly t = poly_mod(x, p);
    for (uint32_t i = 0; i < k; ++i) t = poly_pow_mod(t, b, p);
    return t;
  };

  if (frobenius_iterate(static_cast<uint32_t>(n)) != poly_mod(x, p)) {
    return false;
  }
  // For each distinct prime divisor r of n, x^(b^(n/r)) - x must be coprime
  // to p.
  int m = n;
  for (int r = 2; m > 1; ++r) {
    if (r * r > m) r = m;  // remaining factor is prime
    if (m % r != 0) continue;
    while (m % r == 0) m /= r;
    Poly t = frobenius_iterate(static_cast<uint32_t>(n / r));
    Poly g = poly_gcd(poly_sub(t, poly_mod(x, p)), p);
    if (g.degree() != 0) return false;
  }
  return true;
}

Poly find_irreducible(uint32_t m, uint32_t base) {
  check_base(base);
  if (m < 1) throw std::invalid_argument("degree must be positive");
  // Scan encodings of degree-m polynomials in increasing order.
  uint64_t lo = 1;
  for (uint32_t i = 0; i < m; ++i) lo *= base;
  for (uint64_t enc = lo; enc < lo * base; ++enc) {
    Poly p = poly_from_int(enc, base);
    if (is_irreducible(p)) return p;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

Poly find_group_generator(const Poly& p) {
  if (!is_irreducible(p)) {
    throw std::invalid_argument("modulus must be irreducible");
  }
  const uint32_t b = p.base();
  uint64_t order = 1;
  for (int i = 0; i < p.degree(); ++i) order *= b;
  order -= 1;
  if (order <= 1) return poly_from_int(1, b);
  std::vector<uint64_t> prime_factors;
  uint64_t rest = order;
  for (uint64_t f = 2; f * f <= rest; ++f) {
    if (rest % f) continue;
    prime_factors.push_back(f);
    while (rest % f == 0) rest /= f;
  }
  if (rest > 1) prime_factors.push_back(rest);
  const Poly one = poly_from_int(1, b);
  for (uint64_t enc = 2;; ++enc) {
    Poly g = poly_mod(poly_from_int(enc, b), p);
    if (g.is_zero()) continue;
    bool ok = true;
    for (uint64_t f : prime_factors) {
      if (poly_pow_mod(g, order / f, p) == one) {
        ok = false;
        break;
      }
    }
    if (ok) return poly_from_int(enc, b);
  }
}

DigitExpansion::DigitExpansion(uint32_t base, std::vector<uint16_t> digits)
    : base_(base), digits_(std::move(digits)) {
  check_base(base);
  for (auto d : digits_) {
    if (d >= base_) throw std::invalid_argument("digit out of range");
  }
}

uint64_t DigitExpansion::numerator() const {
  uint64_t n = 0;
  for (auto d : digits_) n = n * base_ + d;
  return n;
}

DigitExpansion laurent_digits(const Poly& n, const Poly& q, const Poly& p,
                              uint32_t precision) {
  check_same_base(n, q);
  check_same_base(n, p);
  if (p.is_zero()) throw std::invalid_argument("zero modulus");
  const uint32_t b = p.base();
  const int dp = p.degree();
  // The polynomial part of n*q/p carries non-negative powers only, so the
  // fractional digits come from (n*q mod p)/p.
  Poly r = poly_mod(poly_mul(n, q), p);
  std::vector<uint16_t> digits(precision, 0);
  if (dp == 0 || r.is_zero()) {
    return DigitExpansion(b, std::move(digits));
  }
  const uint32_t lead_inv = field_inv(p.coeff(dp), b);
  // rho/p = t_1 x^-1 + t_2 x^-2 + ...; multiply by x and reduce each step:
  // t_l is the coefficient that cancels the degree-dp term of rho*x.
  std::vector<uint32_t> rho(static_cast<size_t>(dp), 0);
  for (int i = 0; i <= r.degree(); ++i) rho[static_cast<size_t>(i)] = r.coeff(i);
  for (uint32_t l = 0; l < precision; ++l) {
    uint32_t t = rho[static_cast<size_t>(dp - 1)] * lead_inv % b;
    digits[l] = static_cast<uint16_t>(t);
    // rho <- rho*x - t*p, truncated to degree < dp.
    for (int i = dp - 1; i > 0; --i) {
      rho[static_cast<size_t>(i)] =
          (rho[static_cast<size_t>(i - 1)] + b * b - t * p.coeff(i) % b) % b;
    }
    rho[0] = (b - t * p.coeff(0) % b) % b;
  }
  return DigitExpansion(b, std::move(digits));
}

}  // namespace iplr
