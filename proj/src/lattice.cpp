#include "iplr/lattice.hpp"

#include <stdexcept>

#include "iplr/walsh.hpp"

namespace iplr {

PolyLatticeRule::PolyLatticeRule(uint32_t b_, uint32_t m_, Poly p_,
                                 std::vector<Poly> q_)
    : b(b_), m(m_), p(std::move(p_)), q(std::move(q_)) {
  if (!is_prime_base(b)) {
    throw std::invalid_argument("base must be a prime <= 257");
  }
  if (m < 1) throw std::invalid_argument("degree must be positive");
  if (p.base() != b) throw std::invalid_argument("mixed coefficient fields");
  if (p.degree() != static_cast<int>(m)) {
    throw std::invalid_argument("modulus degree must equal m");
  }
  if (q.empty()) throw std::invalid_argument("empty generating vector");
  for (const auto& qj : q) {
    if (qj.base() != b) throw std::invalid_argument("mixed coefficient fields");
    if (qj.degree() >= static_cast<int>(m)) {
      throw std::invalid_argument("generating component degree must be < m");
    }
  }
  // b^m and the numerators must fit in 64 bits.
  long double total = 1;
  for (uint32_t i = 0; i < m; ++i) total *= b;
  if (total > 9.2e18L) {
    throw std::invalid_argument("point count exceeds 64-bit range");
  }
}

uint64_t PolyLatticeRule::point_count() const {
  uint64_t c = 1;
  for (uint32_t i = 0; i < m; ++i) c *= b;
  return c;
}

PointSet::PointSet(uint32_t b, uint32_t digits, uint64_t rows, uint32_t cols,
                   std::vector<uint64_t> numerators)
    : b_(b), digits_(digits), rows_(rows), cols_(cols),
      numerators_(std::move(numerators)) {
  if (numerators_.size() != rows_ * cols_) {
    throw std::invalid_argument("point table shape mismatch");
  }
}

std::vector<uint64_t> vm_numerator_table(const Poly& p, uint32_t m) {
  const uint32_t b = p.base();
  if (p.degree() != static_cast<int>(m)) {
    throw std::invalid_argument("modulus degree must equal m");
  }
  uint64_t count = 1;
  for (uint32_t i = 0; i < m; ++i) count *= b;
  std::vector<uint64_t> table(count);
  for (uint64_t r = 0; r < count; ++r) {
    table[r] =
        laurent_digits(poly_from_int(r, b), Poly(b, {1}), p, m).numerator();
  }
  return table;
}

std::vector<uint8_t> vm_level_table(const Poly& p, uint32_t m) {
  const uint32_t b = p.base();
  std::vector<uint64_t> nums = vm_numerator_table(p, m);
  // level = m - floor(log_b numerator); numerator 0 has level 0.
  std::vector<uint64_t> pow(m + 1);
  pow[0] = 1;
  for (uint32_t i = 1; i <= m; ++i) pow[i] = pow[i - 1] * b;
  std::vector<uint8_t> level(nums.size());
  for (size_t r = 0; r < nums.size(); ++r) {
    uint64_t v = nums[r];
    if (v == 0) {
      level[r] = 0;
      continue;
    }
    uint32_t lg = 0;
    while (lg + 1 <= m && pow[lg + 1] <= v) ++lg;
    level[r] = static_cast<uint8_t>(m - lg);
  }
  return level;
}

PointSet generate_lattice_points(const PolyLatticeRule& rule) {
  const uint64_t n_points = rule.point_count();
  const uint32_t s = rule.s_total();
  std::vector<uint64_t> nums(n_points * s);
  const std::vector<uint64_t> vm = vm_numerator_table(rule.p, rule.m);
  for (uint32_t j = 0; j < s; ++j) {
    for_each_residue_multiple(rule.q[j], rule.p, rule.m,
                              [&](uint64_t n, uint64_t res) {
                                nums[n * s + j] = vm[res];
                              });
  }
  return PointSet(rule.b, rule.m, n_points, s, std::move(nums));
}

bool dual_contains(const PolyLatticeRule& rule,
                   const std::vector<uint64_t>& k) {
  if (k.size() != rule.q.size()) {
    throw std::invalid_argument("index dimension mismatch");
  }
  uint64_t bm = rule.point_count();
  Poly acc(rule.b);
  for (size_t j = 0; j < k.size(); ++j) {
    Poly kj = poly_from_int(k[j] % bm, rule.b);  // lowest m digits
    acc = poly_add(acc, poly_mul_mod(kj, rule.q[j], rule.p));
  }
  return poly_mod(acc, rule.p).is_zero();
}

int character_sum(const PointSet& points, const std::vector<uint64_t>& k) {
  if (k.size() != points.cols()) {
    throw std::invalid_argument("index dimension mismatch");
  }
  const uint32_t b = points.base();
  std::vector<uint64_t> tally(b, 0);
  for (uint64_t n = 0; n < points.rows(); ++n) {
    uint32_t e = 0;
    for (uint32_t j = 0; j < points.cols(); ++j) {
      e += wal_exponent(k[j], points.numerator(n, j), points.digits(), b);
    }
    ++tally[e % b];
  }
  if (tally[0] == points.rows()) return 1;
  const uint64_t share = points.rows() / b;
  for (uint32_t e = 0; e < b; ++e) {
    if (tally[e] != share) {
      throw std::runtime_error("not a digital net character sum");
    }
  }
  return 0;
}

}  // namespace iplr
