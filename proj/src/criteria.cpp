#include "iplr/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "iplr/parallel.hpp"
#include "iplr/scaled_real.hpp"

namespace iplr {

void CriterionKind::validate(uint32_t d) const {
  if (variant == Variant::B1) {
    if (std::min(alpha, d) < 2) {
      throw std::invalid_argument("interlacing/smoothness must exceed 1");
    }
  } else {
    if (d < 2) {
      throw std::invalid_argument("interlacing/smoothness must exceed 1");
    }
    if (d > alpha) throw std::invalid_argument("B2 requires d <= alpha");
  }
}

namespace {

uint64_t pow_u64(uint32_t b, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

struct PrefixSplit {
  uint32_t j0;  // 1-based index of the block holding component tau
  uint32_t d0;  // number of filled slots in that block
};

PrefixSplit split_prefix(uint32_t tau, uint32_t d) {
  uint32_t j0 = (tau + d - 1) / d;
  return {j0, tau - (j0 - 1) * d};
}

// Digit levels of the first tau point columns, row-major.
std::vector<uint8_t> level_matrix(const InterlacedRule& rule, uint32_t tau) {
  const PolyLatticeRule& base = rule.base;
  const std::vector<uint8_t> lvltab = vm_level_table(base.p, base.m);
  const uint64_t n_points = base.point_count();
  std::vector<uint8_t> lvl(n_points * tau);
  for (uint32_t j = 0; j < tau; ++j) {
    for_each_residue_multiple(base.q[j], base.p, base.m,
                              [&](uint64_t n, uint64_t res) {
                                lvl[n * tau + j] = lvltab[res];
                              });
  }
  return lvl;
}

double acc_to_double(double v) { return v; }
double acc_to_double(const ScaledReal& v) { return v.to_double(); }

template <class Acc>
Acc acc_from(double v);
template <>
double acc_from<double>(double v) {
  return v;
}
template <>
ScaledReal acc_from<ScaledReal>(double v) {
  return ScaledReal(v);
}

// gamma_tilde(v) = gamma(v) * 2^(|v| * factor_log2); factor_log2 = 0 keeps
// the plain weights (B2).
template <class Acc>
Acc subset_weight(const Weights& w, uint64_t mask, double factor_log2);
template <>
double subset_weight<double>(const Weights& w, uint64_t mask,
                             double factor_log2) {
  double g = w.gamma(mask);
  if (g == 0.0 || factor_log2 == 0.0) return g;
  return g * std::exp2(factor_log2 * __builtin_popcountll(mask));
}
template <>
ScaledReal subset_weight<ScaledReal>(const Weights& w, uint64_t mask,
                                     double factor_log2) {
  double g = w.gamma(mask);
  if (g == 0.0) return ScaledReal();
  return ScaledReal(g) *
         ScaledReal::from_log2(factor_log2 * __builtin_popcountll(mask));
}

template <class Acc>
double eval_impl(const InterlacedRule& rule, const Weights& weights,
                 bool is_b1, uint32_t alpha, uint32_t tau) {
  const uint32_t b = rule.base.b, m = rule.base.m, d = rule.d;
  const PrefixSplit pre = split_prefix(tau, d);
  const uint32_t j0 = pre.j0, d0 = pre.d0;

  std::vector<std::vector<double>> tab(d);
  for (uint32_t l = 1; l <= d; ++l) {
    tab[l - 1] = is_b1 ? phi1_level_table(m, alpha, d, b)
                       : phi2_slot_level_table(m, l, d, b);
  }
  const std::vector<uint8_t> lvl = level_matrix(rule, tau);
  const uint64_t n_points = rule.base.point_count();
  const double factor_log2 =
      is_b1 ? std::log2(static_cast<double>(b)) * alpha * (2.0 * d - 1.0) / 2.0
            : 0.0;

  const bool product = weights.is_product();
  // per-block inflated weights for the product case, or the full subset
  // table over blocks 1..j0 otherwise; both are point-independent
  std::vector<Acc> gj, wtab;
  if (product) {
    gj.reserve(j0);
    for (uint32_t j = 1; j <= j0; ++j) {
      gj.push_back(subset_weight<Acc>(weights, uint64_t(1) << (j - 1),
                                      factor_log2));
    }
  } else {
    wtab.resize(size_t(1) << j0);
    for (uint64_t mask = 0; mask < (uint64_t(1) << j0); ++mask) {
      wtab[mask] = subset_weight<Acc>(weights, mask, factor_log2);
    }
  }

  auto map = [&](uint64_t lo, uint64_t hi) -> Acc {
    Acc sum = acc_from<Acc>(0.0);
    std::vector<Acc> beta(j0);  // full blocks 1..j0-1, then the partial block
    std::vector<Acc> prod;      // subset products for general weights
    if (!product) prod.resize(size_t(1) << (j0 - 1));
    for (uint64_t n = lo; n < hi; ++n) {
      const uint8_t* row = lvl.data() + n * tau;
      for (uint32_t j = 0; j + 1 < j0; ++j) {
        Acc p = acc_from<Acc>(1.0);
        for (uint32_t l = 0; l < d; ++l) {
          p *= acc_from<Acc>(1.0 + tab[l][row[j * d + l]]);
        }
        beta[j] = p + acc_from<Acc>(-1.0);
      }
      Acc beta_p = acc_from<Acc>(1.0);
      for (uint32_t l = 0; l < d0; ++l) {
        beta_p *= acc_from<Acc>(1.0 + tab[l][row[(j0 - 1) * d + l]]);
      }
      beta_p += acc_from<Acc>(-1.0);

      Acc val = acc_from<Acc>(0.0);
      if (product) {
        Acc w = acc_from<Acc>(1.0);
        for (uint32_t j = 0; j + 1 < j0; ++j) {
          w *= acc_from<Acc>(1.0) + gj[j] * beta[j];
        }
        val = w + acc_from<Acc>(-1.0) + gj[j0 - 1] * beta_p * w;
      } else {
        const uint64_t top = uint64_t(1) << (j0 - 1);
        const uint64_t j0bit = uint64_t(1) << (j0 - 1);
        prod[0] = acc_from<Acc>(1.0);
        val = wtab[j0bit] * beta_p;
        for (uint64_t mask = 1; mask < top; ++mask) {
          const uint32_t low = __builtin_ctzll(mask);
          prod[mask] = prod[mask & (mask - 1)] * beta[low];
          val += wtab[mask] * prod[mask];
          val += wtab[mask | j0bit] * prod[mask] * beta_p;
        }
      }
      sum += val;
    }
    return sum;
  };
  Acc total = chunked_reduce<Acc>(
      n_points, 4096, map, [](const Acc& a, const Acc& c) { return a + c; },
      acc_from<Acc>(0.0));
  total *= acc_from<Acc>(1.0 / static_cast<double>(pow_u64(b, m)));
  return acc_to_double(total);
}

// Upper estimate of log2 of any intermediate accumulation, used to decide
// between plain double and scaled arithmetic.
double eval_magnitude_log2(const InterlacedRule& rule, const Weights& weights,
                           bool is_b1, uint32_t alpha) {
  const uint32_t b = rule.base.b, d = rule.d, s = rule.s, m = rule.base.m;
  double phimax = 0.0;
  for (uint32_t lv = 0; lv <= m; ++lv) {
    double v = is_b1 ? std::fabs(phi1_by_level(lv, alpha, d, b))
                     : std::fabs(phi2_by_level(lv, d, b));
    phimax = std::max(phimax, v);
  }
  const double block_log2 = d * std::log2(2.0 + phimax);
  const double factor_log2 =
      is_b1 ? std::log2(static_cast<double>(b)) * alpha * (2.0 * d - 1.0) / 2.0
            : 0.0;
  double total = 0.0;
  if (weights.is_product()) {
    for (uint32_t j = 1; j <= s; ++j) {
      double g = weights.gamma_j(j);
      double term = g > 0.0 ? std::log2(g) + factor_log2 + block_log2 : 0.0;
      total += std::max(1.0, term + 1.0);
    }
  } else {
    double worst = 0.0;
    for (uint64_t mask = 1; mask < (uint64_t(1) << s); ++mask) {
      double g = weights.gamma(mask);
      if (g == 0.0) continue;
      int bits = __builtin_popcountll(mask);
      worst = std::max(worst, std::log2(g) + bits * (factor_log2 + block_log2));
    }
    total = worst + s + 2;
  }
  return total;
}

struct EvalRequest {
  bool is_b1;
  uint32_t alpha;
};

CriterionValue eval_common(const InterlacedRule& rule, const Weights& weights,
                           const EvalRequest& req,
                           std::optional<uint32_t> prefix_tau, AccumMode mode) {
  CriterionKind kind = req.is_b1 ? CriterionKind::b1(req.alpha)
                                 : CriterionKind::b2(req.alpha);
  kind.validate(rule.d);
  if (weights.dimension() != rule.s) {
    throw std::invalid_argument("weight dimension mismatch");
  }
  const uint32_t ds = rule.ds();
  const uint32_t tau = prefix_tau.value_or(ds);
  if (tau < 1 || tau > ds) {
    throw std::invalid_argument("prefix length out of range");
  }
  bool scaled;
  switch (mode) {
    case AccumMode::Double:
      scaled = false;
      break;
    case AccumMode::Scaled:
      scaled = true;
      break;
    default:
      scaled =
          eval_magnitude_log2(rule, weights, req.is_b1, req.alpha) > 500.0;
  }
  double v = scaled ? eval_impl<ScaledReal>(rule, weights, req.is_b1,
                                            req.alpha, tau)
                    : eval_impl<double>(rule, weights, req.is_b1, req.alpha,
                                        tau);
  return CriterionValue{v, kind, std::nullopt, std::nullopt};
}

}  // namespace

CriterionValue eval_b1(const InterlacedRule& rule, const Weights& weights,
                       uint32_t alpha, std::optional<uint32_t> prefix_tau,
                       AccumMode mode) {
  return eval_common(rule, weights, {true, alpha}, prefix_tau, mode);
}

CriterionValue eval_b2(const InterlacedRule& rule, const Weights& weights,
                       std::optional<uint32_t> prefix_tau, AccumMode mode) {
  // alpha = d makes the validity requirement d <= alpha vacuous; the value
  // itself never reads it.
  return eval_common(rule, weights, {false, rule.d}, prefix_tau, mode);
}

std::vector<double> phi1_level_table(uint32_t m, uint32_t alpha, uint32_t d,
                                     uint32_t b) {
  std::vector<double> t(m + 1);
  for (uint32_t lv = 0; lv <= m; ++lv) t[lv] = phi1_by_level(lv, alpha, d, b);
  return t;
}

std::vector<double> phi2_slot_level_table(uint32_t m, uint32_t slot,
                                          uint32_t d, uint32_t b) {
  if (slot < 1 || slot > d) throw std::invalid_argument("slot out of range");
  std::vector<double> t(m + 1);
  const double scale = 1.0 / ipow(static_cast<double>(b), slot);
  for (uint32_t lv = 0; lv <= m; ++lv) {
    t[lv] = phi2_by_level(lv, d, b) * scale;
  }
  return t;
}

// ---------- brute-force dual-space oracles ----------

namespace {

struct OracleTables {
  uint32_t ds;
  uint64_t kmax;  // largest enumerated index component (b^K - 1)
  // per component: residue encoding of trunc_m(k) * q_j mod p, and the
  // criterion weight of k
  std::vector<std::vector<uint64_t>> res_enc;
  std::vector<std::vector<double>> rt;
  std::vector<double> S;  // per-component truncated weight sums
  std::vector<double> T;  // per-component analytic tails
};

void oracle_guards(const InterlacedRule& rule, uint32_t K) {
  const uint32_t ds = rule.ds(), m = rule.base.m;
  if (ds > 8 || m > 4 || K > m + 4 || K < 1) {
    throw GuardError("oracle restricted to desk scale");
  }
  // keep the full enumeration bounded even at the guard edge
  long double work = 0;
  long double per =
      std::pow(static_cast<long double>(rule.base.b), K) - 1;
  for (uint32_t size = 1; size <= ds; ++size) {
    long double combos = 1;
    for (uint32_t i = 0; i < size; ++i) combos *= per;
    long double choose = 1;
    for (uint32_t i = 0; i < size; ++i) {
      choose = choose * (ds - i) / (i + 1);
    }
    work += choose * combos;
  }
  if (work > 6e9L) throw GuardError("oracle restricted to desk scale");
}

OracleTables build_oracle_tables(const InterlacedRule& rule,
                                 const CriterionKind& kind, uint32_t K) {
  const uint32_t b = rule.base.b, m = rule.base.m, d = rule.d;
  const uint32_t ds = rule.ds();
  OracleTables t;
  t.ds = ds;
  t.kmax = pow_u64(b, K) - 1;
  const uint64_t bm = pow_u64(b, m);
  t.res_enc.resize(ds);
  t.rt.resize(ds);
  t.S.assign(ds, 0.0);
  t.T.assign(ds, 0.0);
  for (uint32_t j = 0; j < ds; ++j) {
    t.res_enc[j].resize(t.kmax + 1, 0);
    t.rt[j].resize(t.kmax + 1, 1.0);
    for (uint64_t k = 1; k <= t.kmax; ++k) {
      Poly trunc = poly_from_int(k % bm, b);
      t.res_enc[j][k] =
          poly_to_int(poly_mul_mod(trunc, rule.base.q[j], rule.base.p));
      t.rt[j][k] = kind.is_b1() ? r_tilde1(k, kind.alpha, d, b)
                                : r_tilde2(k, j + 1, d, b);
      t.S[j] += t.rt[j][k];
    }
    const double bb = static_cast<double>(b);
    if (kind.is_b1()) {
      const uint32_t minad = std::min(kind.alpha, d);
      const double x = std::pow(bb, 1.0 - static_cast<double>(minad));
      t.T[j] = (1.0 - 1.0 / bb) * std::pow(x, K + 1.0) / (1.0 - x) /
               pow_half(b, kind.alpha);
    } else {
      const uint32_t l = j % d + 1;
      const double y = std::pow(bb, 1.0 - static_cast<double>(d));
      t.T[j] = ipow(bb, d - l) * (1.0 - 1.0 / bb) * std::pow(y, K + 1.0) /
               (1.0 - y);
    }
  }
  return t;
}

// Blocks of {1..ds} touched by the component mask u.
uint64_t block_mask(uint64_t u, uint32_t d) {
  uint64_t w = 0;
  while (u) {
    uint32_t j = static_cast<uint32_t>(__builtin_ctzll(u));
    w |= uint64_t(1) << (j / d);
    u &= u - 1;
  }
  return w;
}

double tail_term(const OracleTables& t, uint64_t u_mask) {
  double with = 1.0, without = 1.0;
  uint64_t u = u_mask;
  while (u) {
    uint32_t j = static_cast<uint32_t>(__builtin_ctzll(u));
    with *= t.S[j] + t.T[j];
    without *= t.S[j];
    u &= u - 1;
  }
  return with - without;
}

}  // namespace

CriterionValue oracle_b(const InterlacedRule& rule, const Weights& weights,
                        const CriterionKind& kind, std::optional<uint32_t> K) {
  kind.validate(rule.d);
  if (weights.dimension() != rule.s) {
    throw std::invalid_argument("weight dimension mismatch");
  }
  const uint32_t KK = K.value_or(rule.base.m + 3);
  oracle_guards(rule, KK);
  const uint32_t b = rule.base.b, d = rule.d, ds = rule.ds();
  const OracleTables t = build_oracle_tables(rule, kind, KK);
  const double factor_log2 =
      kind.is_b1() ? std::log2(static_cast<double>(b)) * kind.alpha *
                         (2.0 * d - 1.0) / 2.0
                   : 0.0;

  const uint64_t n_masks = (uint64_t(1) << ds) - 1;
  auto weight_of = [&](uint64_t u) {
    return subset_weight<double>(weights, block_mask(u, d), factor_log2);
  };

  auto map = [&](uint64_t lo, uint64_t hi) -> double {
    double acc = 0.0;
    for (uint64_t idx = lo; idx < hi; ++idx) {
      const uint64_t u = idx + 1;
      const double g = weight_of(u);
      if (g == 0.0) continue;
      std::vector<uint32_t> comp;
      for (uint32_t j = 0; j < ds; ++j) {
        if (u >> j & 1) comp.push_back(j);
      }
      double sum = 0.0;
      // depth-first over index components, residue folded incrementally
      std::function<void(size_t, uint64_t, double)> rec =
          [&](size_t idx2, uint64_t res, double prod) {
            if (idx2 == comp.size()) {
              if (res == 0) sum += prod;
              return;
            }
            const uint32_t j = comp[idx2];
            for (uint64_t k = 1; k <= t.kmax; ++k) {
              rec(idx2 + 1, enc_add(res, t.res_enc[j][k], b),
                  prod * t.rt[j][k]);
            }
          };
      rec(0, 0, 1.0);
      acc += g * sum;
    }
    return acc;
  };
  double value = chunked_reduce<double>(
      n_masks, 1, map, [](double a, double c) { return a + c; }, 0.0);

  double tail = 0.0;
  for (uint64_t u = 1; u <= n_masks; ++u) {
    tail += weight_of(u) * tail_term(t, u);
  }
  return CriterionValue{value, kind, std::nullopt, tail};
}

CriterionValue oracle_wce(const InterlacedRule& rule, const Weights& weights,
                          uint32_t alpha, std::optional<uint32_t> K) {
  if (alpha < 2) {
    throw std::invalid_argument("interlacing/smoothness must exceed 1");
  }
  if (weights.dimension() != rule.s) {
    throw std::invalid_argument("weight dimension mismatch");
  }
  const uint32_t KK = K.value_or(rule.base.m + 3);
  oracle_guards(rule, KK);
  const uint32_t b = rule.base.b, d = rule.d, ds = rule.ds();
  if (KK * d * std::log2(static_cast<double>(b)) > 63.0) {
    throw GuardError("oracle restricted to desk scale");
  }
  // B1 tables supply the per-component envelope for the tail bound.
  const OracleTables t = build_oracle_tables(rule, CriterionKind::b1(alpha), KK);

  // interlaced digit contribution of index component j taking value k
  std::vector<std::vector<uint64_t>> contrib(ds);
  for (uint32_t j = 0; j < ds; ++j) {
    contrib[j].resize(t.kmax + 1, 0);
    const uint64_t place = pow_u64(b, j % d);
    const uint64_t stride = pow_u64(b, d);
    for (uint64_t k = 1; k <= t.kmax; ++k) {
      uint64_t kk = k, out = 0, pl = place;
      while (kk) {
        out += (kk % b) * pl;
        kk /= b;
        pl *= stride;
      }
      contrib[j][k] = out;
    }
  }

  const uint64_t n_masks = (uint64_t(1) << ds) - 1;
  auto map = [&](uint64_t lo, uint64_t hi) -> double {
    double acc = 0.0;
    for (uint64_t idx = lo; idx < hi; ++idx) {
      const uint64_t u = idx + 1;
      const double g = weights.gamma(block_mask(u, d));
      if (g == 0.0) continue;
      std::vector<uint32_t> comp;
      for (uint32_t j = 0; j < ds; ++j) {
        if (u >> j & 1) comp.push_back(j);
      }
      std::vector<char> new_block(comp.size(), 0);
      for (size_t i = 0; i < comp.size(); ++i) {
        new_block[i] = i == 0 || comp[i] / d != comp[i - 1] / d;
      }
      double sum = 0.0;
      std::function<void(size_t, uint64_t, uint64_t, double)> rec =
          [&](size_t i, uint64_t res, uint64_t accum, double prod) {
            if (i == comp.size()) {
              if (res == 0) sum += prod * r_alpha(accum, alpha, b);
              return;
            }
            if (i > 0 && new_block[i]) {
              prod *= r_alpha(accum, alpha, b);
              accum = 0;
            }
            const uint32_t j = comp[i];
            for (uint64_t k = 1; k <= t.kmax; ++k) {
              rec(i + 1, enc_add(res, t.res_enc[j][k], b),
                  accum + contrib[j][k], prod);
            }
          };
      rec(0, 0, 0, 1.0);
      acc += g * sum;
    }
    return acc;
  };
  double value = chunked_reduce<double>(
      n_masks, 1, map, [](double a, double c) { return a + c; }, 0.0);

  const double factor_log2 =
      std::log2(static_cast<double>(b)) * alpha * (2.0 * d - 1.0) / 2.0;
  double tail = 0.0;
  for (uint64_t u = 1; u <= n_masks; ++u) {
    const double g =
        subset_weight<double>(weights, block_mask(u, d), factor_log2);
    tail += g * tail_term(t, u);
  }
  return CriterionValue{value, CriterionKind::b1(alpha), std::nullopt, tail};
}

// ---------- averaging-argument bounds ----------

namespace {

double check_lambda(double lambda, uint32_t minad) {
  const double lo = 1.0 / static_cast<double>(minad);
  if (!(lambda > lo) || !(lambda <= 1.0)) {
    throw std::invalid_argument("lambda must exceed 1/min(alpha,d)");
  }
  return lambda;
}

// gamma^lambda (optionally inflated) as a scaled value
ScaledReal weight_pow(const Weights& w, uint64_t mask, double factor_log2,
                      double lambda) {
  const double g = w.gamma(mask);
  if (g == 0.0) return ScaledReal();
  const double l2 =
      lambda * (std::log2(g) + factor_log2 * __builtin_popcountll(mask));
  return ScaledReal::from_log2(l2);
}

// -1 + (1 + Gt)^a for B1; -1 + prod_{l=1..a} (1 + b^(lambda(d-l)) Gt) for B2
ScaledReal block_gain(bool is_b1, double gt, uint32_t a, uint32_t d, uint32_t b,
                      double lambda) {
  ScaledReal p(1.0);
  for (uint32_t l = 1; l <= a; ++l) {
    double f = is_b1 ? gt
                     : gt * std::exp2(lambda * (d - l) *
                                      std::log2(static_cast<double>(b)));
    p *= ScaledReal(1.0) + ScaledReal(f);
  }
  return p + ScaledReal(-1.0);
}

}  // namespace

CriterionValue theoretical_bound(Algorithm algo, const CriterionKind& kind,
                                 const BoundParams& params,
                                 const Weights& weights, double lambda,
                                 std::optional<uint32_t> prefix_tau,
                                 bool korobov_b2_gamma_tilde) {
  kind.validate(params.d);
  if (weights.dimension() != params.s) {
    throw std::invalid_argument("weight dimension mismatch");
  }
  const uint32_t b = params.b, d = params.d, s = params.s;
  const uint32_t minad = std::min(kind.alpha, d);
  check_lambda(lambda, minad);
  const uint32_t ds = d * s;
  const bool korobov = algo == Algorithm::Korobov;
  if (korobov && prefix_tau && *prefix_tau != ds) {
    throw std::invalid_argument("prefix not supported for korobov bound");
  }
  const uint32_t tau = prefix_tau.value_or(ds);
  if (tau < 1 || tau > ds) {
    throw std::invalid_argument("prefix length out of range");
  }

  const double bb = static_cast<double>(b);
  const bool is_b1 = kind.is_b1();
  // weights enter B1 inflated, B2 plain (Korobov B2 optionally inflated)
  const double inflate_log2 =
      (is_b1 || (korobov && korobov_b2_gamma_tilde))
          ? std::log2(bb) * kind.alpha * (2.0 * d - 1.0) / 2.0
          : 0.0;

  // per-index-component averaged weight sums
  double gt;
  if (korobov) {
    gt = (bb - 1.0) / (std::pow(bb, lambda * minad) - bb);
    if (is_b1) gt /= std::exp2(lambda * kind.alpha * std::log2(bb) / 2.0);
  } else {
    const double branch1 =
        std::pow((bb - 1.0) / (ipow(bb, minad) - bb), lambda);
    const double branch2 = (bb - 1.0) / (std::pow(bb, lambda * minad) - bb);
    gt = std::max(branch1, branch2);
    if (is_b1) gt /= std::exp2(lambda * kind.alpha * std::log2(bb) / 2.0);
  }

  ScaledReal bracket;
  if (korobov) {
    const ScaledReal gain = block_gain(is_b1, gt, d, d, b, lambda);
    if (weights.is_product()) {
      ScaledReal p(1.0);
      for (uint32_t j = 1; j <= s; ++j) {
        p *= ScaledReal(1.0) +
             weight_pow(weights, uint64_t(1) << (j - 1), inflate_log2,
                        lambda) *
                 gain;
      }
      bracket = p + ScaledReal(-1.0);
    } else {
      std::vector<ScaledReal> gpow(size_t(1) << s);
      gpow[0] = ScaledReal(1.0);
      for (uint64_t mask = 1; mask < (uint64_t(1) << s); ++mask) {
        gpow[mask] = gpow[mask & (mask - 1)] * gain;
        bracket += weight_pow(weights, mask, inflate_log2, lambda) *
                   gpow[mask];
      }
    }
  } else {
    const PrefixSplit pre = split_prefix(tau, d);
    const uint32_t j0 = pre.j0, d0 = pre.d0;
    const ScaledReal gain_full = block_gain(is_b1, gt, d, d, b, lambda);
    const ScaledReal gain_last = block_gain(is_b1, gt, d0, d, b, lambda);
    const uint64_t j0bit = uint64_t(1) << (j0 - 1);
    if (weights.is_product()) {
      ScaledReal p(1.0);
      for (uint32_t j = 1; j < j0; ++j) {
        p *= ScaledReal(1.0) +
             weight_pow(weights, uint64_t(1) << (j - 1), inflate_log2,
                        lambda) *
                 gain_full;
      }
      bracket = p + ScaledReal(-1.0) +
                gain_last * weight_pow(weights, j0bit, inflate_log2, lambda) *
                    p;
    } else {
      const uint64_t top = uint64_t(1) << (j0 - 1);
      std::vector<ScaledReal> gpow(top);
      gpow[0] = ScaledReal(1.0);
      bracket = gain_last * weight_pow(weights, j0bit, inflate_log2, lambda);
      for (uint64_t mask = 1; mask < top; ++mask) {
        gpow[mask] = gpow[mask & (mask - 1)] * gain_full;
        bracket += weight_pow(weights, mask, inflate_log2, lambda) *
                   gpow[mask];
        bracket += weight_pow(weights, mask | j0bit, inflate_log2, lambda) *
                   gpow[mask] * gain_last;
      }
    }
  }

  double value;
  if (bracket.is_zero()) {
    value = 0.0;
  } else {
    double log2_bm1 = std::log2(ipow(bb, params.m) - 1.0);
    double l2 = bracket.log2_abs() - log2_bm1;
    if (korobov) l2 += std::log2(static_cast<double>(ds));
    value = std::exp2(l2 / lambda);
  }
  return CriterionValue{value, kind, lambda, std::nullopt};
}

LambdaOptimum optimize_lambda(const std::function<double(double)>& bound_at,
                              uint32_t min_alpha_d) {
  if (min_alpha_d < 2) {
    throw std::invalid_argument("interlacing/smoothness must exceed 1");
  }
  const double lo = 1.0 / static_cast<double>(min_alpha_d) + 1e-6;
  double best_l = 0.0, best_v = 0.0;
  bool first = true;
  for (int i = 1; i <= 200; ++i) {
    double l = lo + i * (1.0 - lo) / 200.0;
    if (l > 1.0) l = 1.0;
    double v = bound_at(l);
    if (first || v < best_v) {
      best_l = l;
      best_v = v;
      first = false;
    }
  }
  return {best_l, best_v};
}

}  // namespace iplr
