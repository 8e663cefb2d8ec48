#ifndef IPLR_LATTICE_HPP
#define IPLR_LATTICE_HPP

#include <cstdint>
#include <vector>

#include "iplr/gfpoly.hpp"

// Polynomial lattice point sets: b^m points in [0,1)^s obtained from the
// Laurent digit map applied to n(x)*q_j(x)/p(x), together with membership
// tests for the dual space and exact character sums over the points.

namespace iplr {

struct PolyLatticeRule {
  uint32_t b = 2;
  uint32_t m = 1;
  Poly p;
  std::vector<Poly> q;

  PolyLatticeRule(uint32_t b_, uint32_t m_, Poly p_, std::vector<Poly> q_);

  uint32_t s_total() const { return static_cast<uint32_t>(q.size()); }
  uint64_t point_count() const;
};

// Fixed-precision points: column j of row n holds the numerator of the
// point coordinate, i.e. the value is numerator / b^digits.
class PointSet {
 public:
  PointSet(uint32_t b, uint32_t digits, uint64_t rows, uint32_t cols,
           std::vector<uint64_t> numerators);

  uint32_t base() const { return b_; }
  uint32_t digits() const { return digits_; }
  uint64_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }
  uint64_t numerator(uint64_t row, uint32_t col) const {
    return numerators_[row * cols_ + col];
  }
  const std::vector<uint64_t>& numerators() const { return numerators_; }

 private:
  uint32_t b_;
  uint32_t digits_;
  uint64_t rows_;
  uint32_t cols_;
  std::vector<uint64_t> numerators_;
};

// All b^m points, row n in the order n = 0, 1, ..., b^m - 1.
PointSet generate_lattice_points(const PolyLatticeRule& rule);

// Whether k lies in the dual space: sum_j trunc_m(k_j) * q_j == 0 (mod p),
// where trunc_m keeps the lowest m base-b digits of k_j.
bool dual_contains(const PolyLatticeRule& rule, const std::vector<uint64_t>& k);

// Exact value of (1/N) sum_n wal_k(x_n) over a digital point set, which is
// always 0 or 1. Throws "not a digital net character sum" if the tallied
// Walsh exponents are neither all zero nor uniformly distributed.
int character_sum(const PointSet& points, const std::vector<uint64_t>& k);

// --- residue-table plumbing shared with the search/criteria code ---

// numerator of v_m(r/p) for every residue encoding r < b^m (deg p = m).
std::vector<uint64_t> vm_numerator_table(const Poly& p, uint32_t m);

// Position of the first nonzero fractional digit of v_m(r/p) in 1..m, or 0
// when the value is zero (r = 0). Index: residue encoding.
std::vector<uint8_t> vm_level_table(const Poly& p, uint32_t m);

// Digitwise sum mod base of two encodings (carry-free addition).
inline uint64_t enc_add(uint64_t a, uint64_t c, uint32_t base) {
  if (base == 2) return a ^ c;
  uint64_t r = 0, mult = 1;
  while (a || c) {
    uint64_t da = a % base, dc = c % base;
    r += ((da + dc) % base) * mult;
    a /= base;
    c /= base;
    mult *= base;
  }
  return r;
}

// Calls fn(n, enc(n*q mod p)) for n = 0..b^m-1 in natural order, maintaining
// the residue incrementally through the base-b odometer on n.
template <class Fn>
void for_each_residue_multiple(const Poly& q, const Poly& p, uint32_t m,
                               Fn&& fn) {
  const uint32_t b = p.base();
  uint64_t count = 1;
  for (uint32_t i = 0; i < m; ++i) count *= b;
  // shift[i] = enc(x^i * q mod p)
  std::vector<uint64_t> shift(m);
  Poly xi = poly_from_int(1, b);
  const Poly x = poly_from_int(b, b);
  for (uint32_t i = 0; i < m; ++i) {
    shift[i] = poly_to_int(poly_mod(poly_mul(xi, q), p));
    xi = poly_mul(xi, x);
  }
  std::vector<uint16_t> digit(m, 0);
  uint64_t res = 0;
  for (uint64_t n = 0; n < count; ++n) {
    fn(n, res);
    if (n + 1 == count) break;
    // odometer increment; every touched digit position adds x^i*q once
    // (a wrap from b-1 to 0 changes the digit by -(b-1) == +1 mod b).
    uint32_t i = 0;
    while (digit[i] == b - 1) {
      digit[i] = 0;
      res = enc_add(res, shift[i], b);
      ++i;
    }
    ++digit[i];
    res = enc_add(res, shift[i], b);
  }
}

}  // namespace iplr

#endif
