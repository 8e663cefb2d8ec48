#ifndef IPLR_GFPOLY_HPP
#define IPLR_GFPOLY_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

// Dense polynomials over the prime field F_b, plus the base-b digit
// expansions obtained from Laurent series of rational functions n(x)/p(x).
// These are the raw ingredients of polynomial lattice point sets.

namespace iplr {

bool is_prime_base(uint32_t b);

// Degree sentinel for the zero polynomial (treated as -infinity).
inline constexpr int kDegNegInf = std::numeric_limits<int>::min();

class Poly {
 public:
  // Zero polynomial over F_b.
  explicit Poly(uint32_t base);
  // Coefficients in ascending order: coeffs[i] multiplies x^i.
  Poly(uint32_t base, std::vector<uint16_t> coeffs);

  uint32_t base() const { return base_; }
  // kDegNegInf for the zero polynomial.
  int degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  uint16_t coeff(int i) const;  // 0 outside the stored range
  const std::vector<uint16_t>& coeffs() const { return coeffs_; }

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void trim();
  uint32_t base_;
  std::vector<uint16_t> coeffs_;  // trimmed: back() != 0 when non-empty
};

// Base-b digit encoding: n = sum_i c_i b^i maps to the polynomial
// sum_i c_i x^i, a bijection between N_0 and F_b[x].
Poly poly_from_int(uint64_t n, uint32_t base);
uint64_t poly_to_int(const Poly& p);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
// Quotient and remainder with deg(r) < deg(p); throws on zero modulus.
struct PolyDivMod {
  Poly quot;
  Poly rem;
};
PolyDivMod poly_divmod(const Poly& a, const Poly& p);
Poly poly_mod(const Poly& a, const Poly& p);
Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& p);
Poly poly_pow_mod(const Poly& a, uint64_t e, const Poly& p);
Poly poly_gcd(Poly a, Poly b);

// Rabin's test: p is irreducible over F_b iff x^(b^deg) == x (mod p) and
// gcd(x^(b^(deg/r)) - x, p) = 1 for every prime r dividing deg.
bool is_irreducible(const Poly& p);

// Smallest irreducible polynomial of exact degree m under the integer
// encoding order. Deterministic; throws if m < 1 ("degree must be positive").
Poly find_irreducible(uint32_t m, uint32_t base);

// Smallest-encoding generator of the multiplicative group of residues mod
// an irreducible p (cyclic of order b^deg(p) - 1).
Poly find_group_generator(const Poly& p);

// First `precision` fractional base-b digits t_1..t_precision of the Laurent
// expansion of n(x)*q(x)/p(x); digits beyond x^{-precision} and the
// polynomial part (non-negative powers) are discarded.
class DigitExpansion {
 public:
  DigitExpansion(uint32_t base, std::vector<uint16_t> digits);
  uint32_t base() const { return base_; }
  uint32_t precision() const { return static_cast<uint32_t>(digits_.size()); }
  // t_l for l = 1..precision (most significant fractional digit first).
  const std::vector<uint16_t>& digits() const { return digits_; }
  // sum_l t_l b^(precision-l); the represented value is numerator()/b^precision.
  uint64_t numerator() const;

  bool operator==(const DigitExpansion& o) const = default;

 private:
  uint32_t base_;
  std::vector<uint16_t> digits_;
};

DigitExpansion laurent_digits(const Poly& n, const Poly& q, const Poly& p,
                              uint32_t precision);

}  // namespace iplr

#endif
