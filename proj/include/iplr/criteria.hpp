#ifndef IPLR_CRITERIA_HPP
#define IPLR_CRITERIA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "iplr/interlace.hpp"
#include "iplr/walsh.hpp"

// The two computable quality criteria for interlaced polynomial lattice
// rules, their brute-force dual-space oracles, the averaging-argument
// bounds satisfied by component-by-component and Korobov constructions,
// and the Jensen-exponent optimizer used to report the sharpest bound.

namespace iplr {

// Thrown when a request exceeds the documented desk-scale limits of the
// brute-force oracles or exhaustive search; the CLI maps this to exit 3.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CriterionKind {
  enum class Variant { B1, B2 };
  Variant variant = Variant::B1;
  // Smoothness. Drives the B1 weights; for B2 it only enters the validity
  // requirement d <= alpha (the B2 value itself does not depend on it).
  uint32_t alpha = 2;

  static CriterionKind b1(uint32_t alpha) { return {Variant::B1, alpha}; }
  static CriterionKind b2(uint32_t alpha) { return {Variant::B2, alpha}; }
  bool is_b1() const { return variant == Variant::B1; }

  void validate(uint32_t d) const;
};

struct CriterionValue {
  double value = 0.0;
  CriterionKind kind;
  std::optional<double> lambda;      // set by bound evaluations
  std::optional<double> tail_bound;  // set by truncated oracles
};

enum class Algorithm { Cbc, FastCbc, Korobov, Exhaustive };

// Accumulation strategy for criterion sums. Auto switches to the scaled
// (mantissa, exponent) representation when the inflated weights could push
// intermediate products past 2^500.
enum class AccumMode { Auto, Double, Scaled };

// Exact point-space evaluation of the first criterion for the rule prefix
// (q_1, ..., q_tau); prefix_tau defaults to the full d*s components.
CriterionValue eval_b1(const InterlacedRule& rule, const Weights& weights,
                       uint32_t alpha,
                       std::optional<uint32_t> prefix_tau = std::nullopt,
                       AccumMode mode = AccumMode::Auto);

// Same for the second criterion (valid for d <= alpha; alpha-free value).
CriterionValue eval_b2(const InterlacedRule& rule, const Weights& weights,
                       std::optional<uint32_t> prefix_tau = std::nullopt,
                       AccumMode mode = AccumMode::Auto);

// Truncated dual-space sum with every index component below b^K, plus an
// analytic geometric tail bound for the discarded part. Desk-scale only:
// d*s <= 8, m <= 4, K <= m+4 (default K = m+3).
CriterionValue oracle_b(const InterlacedRule& rule, const Weights& weights,
                        const CriterionKind& kind,
                        std::optional<uint32_t> K = std::nullopt);

// Truncated worst-case-error sum over the interlaced dual space (the
// quantity both criteria dominate), with the same guards and a tail bound
// inherited from the per-component envelope of the interlaced weight.
CriterionValue oracle_wce(const InterlacedRule& rule, const Weights& weights,
                          uint32_t alpha,
                          std::optional<uint32_t> K = std::nullopt);

struct BoundParams {
  uint32_t b;
  uint32_t m;
  uint32_t s;
  uint32_t d;
  uint32_t alpha;
};

// Existence bound guaranteed for the construction at Jensen exponent
// lambda in (1/min(alpha,d), 1]. For Cbc/FastCbc/Exhaustive the bound of
// the component-by-component argument applies (optionally at a prefix
// tau); Korobov uses its own bound carrying the extra (d*s)^(1/lambda)
// factor. korobov_b2_gamma_tilde switches the Korobov B2 bound to the
// inflated weights (a looser, also valid variant).
CriterionValue theoretical_bound(Algorithm algo, const CriterionKind& kind,
                                 const BoundParams& params,
                                 const Weights& weights, double lambda,
                                 std::optional<uint32_t> prefix_tau =
                                     std::nullopt,
                                 bool korobov_b2_gamma_tilde = false);

struct LambdaOptimum {
  double lambda;
  double value;
};

// Deterministic 200-point grid search over (1/min(alpha,d) + 1e-6, 1];
// ties resolve to the smallest lambda.
LambdaOptimum optimize_lambda(const std::function<double(double)>& bound_at,
                              uint32_t min_alpha_d);

// phi lookup tables by digit level (index 0 encodes z = 0, then 1..m).
std::vector<double> phi1_level_table(uint32_t m, uint32_t alpha, uint32_t d,
                                     uint32_t b);
// Table of phi2(level)/b^slot for slot in 1..d.
std::vector<double> phi2_slot_level_table(uint32_t m, uint32_t slot,
                                          uint32_t d, uint32_t b);

}  // namespace iplr

#endif
