#ifndef IPLR_INTERLACE_HPP
#define IPLR_INTERLACE_HPP

#include <cstdint>
#include <vector>

#include "iplr/lattice.hpp"

// Digit interlacing: d-tuples of base-b digit strings are woven into a
// single string, turning a ds-dimensional lattice point set into an
// s-dimensional point set of higher-order convergence, and similarly mapping
// integer index d-tuples to single indices on the dual side.

namespace iplr {

// A ds-dimensional polynomial lattice rule viewed as s interlaced blocks of
// d consecutive components each.
struct InterlacedRule {
  uint32_t d = 2;
  uint32_t s = 1;
  PolyLatticeRule base;

  InterlacedRule(uint32_t d_, uint32_t s_, PolyLatticeRule base_);

  uint32_t ds() const { return d * s; }
};

struct InterlacedPointSet {
  uint32_t d;
  PointSet points;  // digits = d*m, one column per interlaced block
};

// E_d: digit a of k_r lands at digit position a*d + r - 1 of the result.
uint64_t interlace_int(const std::vector<uint64_t>& k, uint32_t d, uint32_t b);

// Left inverse of interlace_int on all of N_0.
std::vector<uint64_t> deinterlace_int(uint64_t l, uint32_t d, uint32_t b);

// D_d on one block: fractional digit a of z_r (numerators with m digits)
// lands at fractional digit r + (a-1)*d of the result (d*m digits).
uint64_t interlace_point(const std::vector<uint64_t>& z_nums, uint32_t m,
                         uint32_t b);

// Blockwise D_d over all rows of the base lattice point set.
InterlacedPointSet generate_interlaced_points(const InterlacedRule& rule);

}  // namespace iplr

#endif
