#ifndef IPLR_SEARCH_HPP
#define IPLR_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "iplr/criteria.hpp"

// Rule construction: greedy component-by-component search (straight and
// transform-accelerated), the one-parameter Korobov search, and an
// exhaustive baseline for quantifying the greedy gap at desk scale.
//
// All searches break ties toward the smallest integer encoding of the
// candidate polynomial, making every result deterministic and independent
// of the thread count.

namespace iplr {

struct SearchConfig {
  uint32_t b = 2;
  uint32_t m = 1;
  uint32_t s = 1;
  uint32_t d = 2;
  CriterionKind criterion = CriterionKind::b1(2);
  Weights weights = Weights::product({1.0});
  // Defaults to the smallest irreducible polynomial of degree m.
  std::optional<Poly> modulus;

  // Throws std::invalid_argument on any violated invariant and returns the
  // resolved (validated) modulus.
  Poly validate() const;
};

struct SearchResult {
  InterlacedRule rule;
  // One entry per component step for the CBC searches (tau = 1..ds); a
  // single final value for Korobov and exhaustive.
  std::vector<CriterionValue> trace;
  Algorithm algorithm = Algorithm::Cbc;
  double elapsed = 0.0;  // seconds
};

// Greedy search: q_1 = 1, then each q_tau minimizes the prefix criterion
// over all nonzero polynomials of degree < m.
SearchResult cbc_construct(const SearchConfig& config);

// Same selections as cbc_construct (bit-identical under the tie-break), but
// every candidate sweep is a circular correlation over the cyclic residue
// group, so a step costs O(b^m log b^m) instead of O(b^2m). Product weights
// only.
SearchResult fast_cbc_construct(const SearchConfig& config);

// One-parameter family q = (1, q~, q~^2, ..., q~^(ds-1)) mod p.
SearchResult korobov_construct(const SearchConfig& config);

// Global argmin over {1} x R_m^(ds-1); guarded to (b^m-1)^(ds-1) <= 10^6.
SearchResult exhaustive_construct(const SearchConfig& config);

}  // namespace iplr

#endif
