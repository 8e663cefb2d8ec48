#include "iplr/interlace.hpp"

#include <cmath>
#include <stdexcept>

namespace iplr {

InterlacedRule::InterlacedRule(uint32_t d_, uint32_t s_, PolyLatticeRule base_)
    : d(d_), s(s_), base(std::move(base_)) {
  if (d < 2) throw std::invalid_argument("interlacing factor must exceed 1");
  if (s < 1) throw std::invalid_argument("dimension must be positive");
  if (base.s_total() != d * s) {
    throw std::invalid_argument("base rule must have d*s components");
  }
}

uint64_t interlace_int(const std::vector<uint64_t>& k, uint32_t d,
                       uint32_t b) {
  if (k.size() != d) throw std::invalid_argument("expected d components");
  uint32_t max_digits = 0;
  for (uint64_t kr : k) {
    uint32_t len = 0;
    while (kr != 0) {
      kr /= b;
      ++len;
    }
    if (len > max_digits) max_digits = len;
  }
  const double bits =
      static_cast<double>(max_digits) * d * std::log2(static_cast<double>(b));
  if (bits > 63.0) {
    throw std::invalid_argument("interlaced index exceeds 64-bit range");
  }
  uint64_t out = 0;
  // positions a*d + r - 1 for digit a of component r (both 0-based below)
  for (uint32_t r = 0; r < d; ++r) {
    uint64_t kr = k[r];
    uint64_t place = 1;
    for (uint32_t i = 0; i < r; ++i) place *= b;  // b^r
    uint64_t stride = 1;
    for (uint32_t i = 0; i < d; ++i) stride *= b;  // b^d
    while (kr != 0) {
      out += (kr % b) * place;
      kr /= b;
      place *= stride;
    }
  }
  return out;
}

std::vector<uint64_t> deinterlace_int(uint64_t l, uint32_t d, uint32_t b) {
  std::vector<uint64_t> k(d, 0);
  std::vector<uint64_t> place(d, 1);
  uint32_t pos = 0;
  while (l != 0) {
    uint32_t r = pos % d;
    k[r] += (l % b) * place[r];
    place[r] *= b;
    l /= b;
    ++pos;
  }
  return k;
}

uint64_t interlace_point(const std::vector<uint64_t>& z_nums, uint32_t m,
                         uint32_t b) {
  const uint32_t d = static_cast<uint32_t>(z_nums.size());
  if (d == 0) throw std::invalid_argument("empty block");
  const double bits =
      static_cast<double>(m) * d * std::log2(static_cast<double>(b));
  if (bits > 63.0) {
    throw std::invalid_argument("interlaced numerator exceeds 64-bit range");
  }
  // digit arrays, most significant fractional digit first
  uint64_t out = 0;
  std::vector<uint16_t> digits(static_cast<size_t>(m) * d, 0);
  for (uint32_t r = 0; r < d; ++r) {
    uint64_t num = z_nums[r];
    uint64_t limit = 1;
    for (uint32_t i = 0; i < m; ++i) limit *= b;
    if (num >= limit) throw std::invalid_argument("numerator out of range");
    for (uint32_t a = m; a >= 1; --a) {
      // fractional digit a of z_r goes to output position r+1 + (a-1)*d
      digits[(a - 1) * d + r] = static_cast<uint16_t>(num % b);
      num /= b;
    }
  }
  for (uint32_t i = 0; i < m * d; ++i) out = out * b + digits[i];
  return out;
}

InterlacedPointSet generate_interlaced_points(const InterlacedRule& rule) {
  const PointSet base = generate_lattice_points(rule.base);
  const uint32_t d = rule.d, s = rule.s, m = rule.base.m, b = rule.base.b;
  std::vector<uint64_t> nums(base.rows() * s);
  std::vector<uint64_t> block(d);
  for (uint64_t n = 0; n < base.rows(); ++n) {
    for (uint32_t j = 0; j < s; ++j) {
      for (uint32_t r = 0; r < d; ++r) block[r] = base.numerator(n, j * d + r);
      nums[n * s + j] = interlace_point(block, m, b);
    }
  }
  return InterlacedPointSet{d, PointSet(b, d * m, base.rows(), s,
                                        std::move(nums))};
}

}  // namespace iplr
