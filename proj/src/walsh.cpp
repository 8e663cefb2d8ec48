#include "iplr/walsh.hpp"

#include <cmath>
#include <stdexcept>

namespace iplr {

namespace {

void check_base(uint32_t b) {
  if (b < 2 || b > 257) throw std::invalid_argument("invalid base");
}

}  // namespace

uint32_t wal_exponent(uint64_t k, uint64_t x_num, uint32_t digits,
                      uint32_t b) {
  check_base(b);
  if (digits > 64) throw std::invalid_argument("digit count exceeds 64");
  uint16_t xd[64];
  for (uint32_t i = digits; i >= 1; --i) {
    xd[i - 1] = static_cast<uint16_t>(x_num % b);
    x_num /= b;
  }
  uint64_t e = 0;
  for (uint32_t i = 1; k != 0 && i <= digits; ++i, k /= b) {
    e += (k % b) * xd[i - 1];
  }
  return static_cast<uint32_t>(e % b);
}

uint64_t mu(uint64_t k, uint32_t alpha, uint32_t b) {
  check_base(b);
  if (alpha < 1) throw std::invalid_argument("smoothness must be positive");
  if (k == 0) return 0;
  uint16_t digit[64];
  uint32_t len = 0;
  while (k != 0) {
    digit[len++] = static_cast<uint16_t>(k % b);
    k /= b;
  }
  uint64_t sum = 0;
  uint32_t taken = 0;
  for (uint32_t i = len; i >= 1 && taken < alpha; --i) {
    if (digit[i - 1] != 0) {
      sum += i;
      ++taken;
    }
  }
  return sum;
}

double ipow(double base, uint64_t e) {
  double r = 1.0;
  double acc = base;
  while (e != 0) {
    if (e & 1) r *= acc;
    acc *= acc;
    e >>= 1;
  }
  return r;
}

double pow_half(uint32_t b, uint32_t twice_exponent) {
  double r = ipow(static_cast<double>(b), twice_exponent / 2);
  if (twice_exponent % 2) r *= std::sqrt(static_cast<double>(b));
  return r;
}

double r_alpha(uint64_t k, uint32_t alpha, uint32_t b) {
  if (k == 0) return 1.0;
  return 1.0 / ipow(static_cast<double>(b), mu(k, alpha, b));
}

double r_alpha(const std::vector<uint64_t>& k, uint32_t alpha, uint32_t b) {
  double r = 1.0;
  for (uint64_t kj : k) r *= r_alpha(kj, alpha, b);
  return r;
}

double r_tilde1(uint64_t k, uint32_t alpha, uint32_t d, uint32_t b) {
  if (k == 0) return 1.0;
  const uint32_t minad = alpha < d ? alpha : d;
  const uint64_t m1 = mu(k, 1, b);
  return 1.0 / (ipow(static_cast<double>(b), minad * m1) * pow_half(b, alpha));
}

double r_tilde2(uint64_t k, uint32_t j, uint32_t d, uint32_t b) {
  if (j < 1) throw std::invalid_argument("component index must be positive");
  if (k == 0) return 1.0;
  const uint32_t l = (j - 1) % d + 1;  // slot within the d-block
  const uint64_t m1 = mu(k, 1, b);
  return ipow(static_cast<double>(b), d - l) /
         ipow(static_cast<double>(b), d * m1);
}

uint32_t level_of(uint64_t num, uint32_t digits, uint32_t b) {
  if (num == 0) return 0;
  uint32_t lg = 0;
  uint64_t pow = 1;
  // largest lg with b^lg <= num
  while (pow <= num / b) {
    pow *= b;
    ++lg;
  }
  if (lg >= digits) throw std::invalid_argument("numerator out of range");
  return digits - lg;
}

double phi1_by_level(uint32_t level, uint32_t alpha, uint32_t d, uint32_t b) {
  check_base(b);
  const uint32_t minad = alpha < d ? alpha : d;
  if (minad < 2) {
    throw std::invalid_argument("interlacing/smoothness must exceed 1");
  }
  const double denom =
      pow_half(b, alpha + 2) * (ipow(static_cast<double>(b), minad - 1) - 1.0);
  double t = 0.0;  // b^((min-1) * floor(log_b z)), zero when z = 0
  if (level > 0) {
    t = 1.0 / ipow(static_cast<double>(b),
                   static_cast<uint64_t>(minad - 1) * level);
  }
  const double numer =
      (b - 1.0) - t * (ipow(static_cast<double>(b), minad) - 1.0);
  return numer / denom;
}

double phi2_by_level(uint32_t level, uint32_t d, uint32_t b) {
  check_base(b);
  if (d < 2) throw std::invalid_argument("interlacing/smoothness must exceed 1");
  const double bd1 = ipow(static_cast<double>(b), d - 1);
  double t = 0.0;
  if (level > 0) {
    t = 1.0 /
        ipow(static_cast<double>(b), static_cast<uint64_t>(d - 1) * level);
  }
  const double numer = (b - 1.0) - t * (ipow(static_cast<double>(b), d) - 1.0);
  return bd1 * numer / (bd1 - 1.0);
}

double phi1(uint64_t z_num, uint32_t digits, uint32_t alpha, uint32_t d,
            uint32_t b) {
  return phi1_by_level(level_of(z_num, digits, b), alpha, d, b);
}

double phi2(uint64_t z_num, uint32_t digits, uint32_t d, uint32_t b) {
  return phi2_by_level(level_of(z_num, digits, b), d, b);
}

double gamma_tilde_factor(uint32_t alpha, uint32_t d, uint32_t b) {
  return pow_half(b, alpha * (2 * d - 1));
}

Weights::Weights(Kind k, uint32_t s, std::vector<double> values,
                 double gamma_empty)
    : kind_(k), s_(s), values_(std::move(values)), gamma_empty_(gamma_empty) {
  if (s_ < 1) throw std::invalid_argument("dimension must be positive");
  if (!(gamma_empty_ > 0.0)) {
    throw std::invalid_argument("gamma_empty must be positive");
  }
  for (double v : values_) {
    if (!(v >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
  }
}

Weights Weights::product(std::vector<double> gammas, double gamma_empty) {
  const uint32_t s = static_cast<uint32_t>(gammas.size());
  return Weights(Kind::Product, s, std::move(gammas), gamma_empty);
}

Weights Weights::general(uint32_t s, std::vector<double> table,
                         double gamma_empty) {
  if (s > 20) throw std::invalid_argument("general weights limited to s <= 20");
  if (table.size() != (size_t(1) << s)) {
    throw std::invalid_argument("general weight table must have 2^s entries");
  }
  return Weights(Kind::General, s, std::move(table), gamma_empty);
}

double Weights::gamma(uint64_t subset_mask) const {
  if (subset_mask == 0) return gamma_empty_;
  if (subset_mask >> s_) {
    throw std::invalid_argument("subset mask out of range");
  }
  if (kind_ == Kind::General) return values_[subset_mask];
  double g = 1.0;
  uint64_t m = subset_mask;
  while (m) {
    uint32_t j = static_cast<uint32_t>(__builtin_ctzll(m));
    g *= values_[j];
    m &= m - 1;
  }
  return g;
}

double Weights::gamma_j(uint32_t j) const {
  if (kind_ != Kind::Product) {
    throw std::logic_error("per-coordinate weight requires product kind");
  }
  if (j < 1 || j > s_) throw std::invalid_argument("coordinate out of range");
  return values_[j - 1];
}

double Weights::gamma_tilde(uint64_t subset_mask, uint32_t alpha, uint32_t d,
                            uint32_t b) const {
  const int bits = __builtin_popcountll(subset_mask);
  return gamma(subset_mask) *
         ipow(gamma_tilde_factor(alpha, d, b), static_cast<uint64_t>(bits));
}

bool Weights::all_zero() const {
  if (kind_ == Kind::Product) {
    // a single zero gamma_j does not kill subsets avoiding j
    for (double v : values_) {
      if (v != 0.0) return false;
    }
    return true;
  }
  for (size_t mask = 1; mask < values_.size(); ++mask) {
    if (values_[mask] != 0.0) return false;
  }
  return true;
}

}  // namespace iplr
