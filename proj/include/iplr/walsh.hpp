#ifndef IPLR_WALSH_HPP
#define IPLR_WALSH_HPP

#include <cstdint>
#include <vector>

// Base-b Walsh characters, the digit-weight functions driving the two
// quality criteria, and the weighted function-space coefficients gamma_v.

namespace iplr {

// Exponent e in wal_k(x) = omega_b^e for x = x_num / b^digits:
// e = sum_i kappa_{i-1} * x_i mod b, pairing digit i-1 of k with fractional
// digit i of x.
uint32_t wal_exponent(uint64_t k, uint64_t x_num, uint32_t digits, uint32_t b);

// Dick weight: sum of the positions (1-indexed from the most significant
// digit) of the min(nu, alpha) most significant nonzero digits of k.
uint64_t mu(uint64_t k, uint32_t alpha, uint32_t b);

// b^(-mu_alpha(k)); 1 for k = 0.
double r_alpha(uint64_t k, uint32_t alpha, uint32_t b);
double r_alpha(const std::vector<uint64_t>& k, uint32_t alpha, uint32_t b);

// First-criterion weight: b^(-min(alpha,d)*mu_1(k) - alpha/2); 1 for k = 0.
double r_tilde1(uint64_t k, uint32_t alpha, uint32_t d, uint32_t b);

// Second-criterion weight for component index j (1-based within a d-block
// layout): b^(-d*mu_1(k) - j + d*ceil(j/d)); 1 for k = 0.
double r_tilde2(uint64_t k, uint32_t j, uint32_t d, uint32_t b);

// Digit level of x = num / b^digits: position of the first nonzero
// fractional digit (1-based), or 0 when x = 0.
uint32_t level_of(uint64_t num, uint32_t digits, uint32_t b);

// Closed forms of the per-coordinate Walsh series sums. They depend on z
// only through floor(log_b z) = -level, so the by-level variants are the
// workhorses; level 0 encodes z = 0.
double phi1_by_level(uint32_t level, uint32_t alpha, uint32_t d, uint32_t b);
double phi2_by_level(uint32_t level, uint32_t d, uint32_t b);
double phi1(uint64_t z_num, uint32_t digits, uint32_t alpha, uint32_t d,
            uint32_t b);
double phi2(uint64_t z_num, uint32_t digits, uint32_t d, uint32_t b);

// b^(alpha*(2d-1)/2), the per-coordinate inflation applied to the weights in
// the first criterion.
double gamma_tilde_factor(uint32_t alpha, uint32_t d, uint32_t b);

// Exact b^e via repeated multiplication, and b^(e/2) for integer e.
double ipow(double base, uint64_t e);
double pow_half(uint32_t b, uint32_t twice_exponent);

class Weights {
 public:
  enum class Kind { Product, General };

  // gamma_u = prod_{j in u} gammas[j-1].
  static Weights product(std::vector<double> gammas, double gamma_empty = 1.0);
  // Explicit table over subset bitmasks of {1..s}; entry 0 is ignored in
  // favor of gamma_empty. Limited to s <= 20.
  static Weights general(uint32_t s, std::vector<double> table,
                         double gamma_empty = 1.0);

  Kind kind() const { return kind_; }
  bool is_product() const { return kind_ == Kind::Product; }
  uint32_t dimension() const { return s_; }
  double gamma_empty() const { return gamma_empty_; }
  double gamma(uint64_t subset_mask) const;
  double gamma_j(uint32_t j) const;  // product kind, 1-based
  // gamma_v * b^(alpha*(2d-1)*|v|/2)
  double gamma_tilde(uint64_t subset_mask, uint32_t alpha, uint32_t d,
                     uint32_t b) const;
  bool all_zero() const;  // every nonempty-subset weight is zero

  const std::vector<double>& raw() const { return values_; }

 private:
  Weights(Kind k, uint32_t s, std::vector<double> values, double gamma_empty);
  Kind kind_;
  uint32_t s_;
  std::vector<double> values_;  // product: s gammas; general: 2^s table
  double gamma_empty_;
};

}  // namespace iplr

#endif
