#include "iplr/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "iplr/fft.hpp"
#include "iplr/parallel.hpp"

namespace iplr {

Poly SearchConfig::validate() const {
  criterion.validate(d);
  if (s < 1) throw std::invalid_argument("dimension must be positive");
  if (weights.dimension() != s) {
    throw std::invalid_argument("weight dimension mismatch");
  }
  if (!weights.is_product() && s > 12) {
    throw std::invalid_argument("general weights limited to s <= 12 in search");
  }
  Poly p = modulus ? *modulus : find_irreducible(m, b);
  if (p.base() != b) throw std::invalid_argument("modulus base mismatch");
  if (p.degree() != static_cast<int>(m)) {
    throw std::invalid_argument("modulus degree must equal m");
  }
  if (!is_irreducible(p)) {
    throw std::invalid_argument("modulus must be irreducible");
  }
  return p;
}

namespace {

uint64_t pow_u64(uint32_t b, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  uint64_t enc = std::numeric_limits<uint64_t>::max();
};

Candidate better(const Candidate& a, const Candidate& c) {
  if (c.value < a.value || (c.value == a.value && c.enc < a.enc)) return c;
  return a;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Incremental state for the greedy search. Per point n it carries the
// product over completed interlacing blocks and the partial product of the
// block in progress, so scoring one candidate for the next component is a
// single O(b^m) sweep: value = (K + sum_n coef[n] * phi(z_n(q~))) / b^m.
class CbcEngine {
 public:
  CbcEngine(const SearchConfig& config, Poly p)
      : b_(config.b),
        m_(config.m),
        s_(config.s),
        d_(config.d),
        is_b1_(config.criterion.is_b1()),
        weights_(config.weights),
        p_(std::move(p)),
        n_points_(pow_u64(config.b, config.m)),
        lvltab_(vm_level_table(p_, config.m)) {
    phitab_.resize(d_);
    for (uint32_t l = 1; l <= d_; ++l) {
      phitab_[l - 1] =
          is_b1_ ? phi1_level_table(m_, config.criterion.alpha, d_, b_)
                 : phi2_slot_level_table(m_, l, d_, b_);
    }
    const double factor_log2 =
        is_b1_ ? std::log2(static_cast<double>(b_)) * config.criterion.alpha *
                     (2.0 * d_ - 1.0) / 2.0
               : 0.0;
    if (weights_.is_product()) {
      gj_.resize(s_);
      for (uint32_t j = 1; j <= s_; ++j) {
        gj_[j - 1] = weights_.gamma_j(j) * std::exp2(factor_log2);
      }
      wfull_.assign(n_points_, 1.0);
    } else {
      gsub_.resize(size_t(1) << s_);
      for (uint64_t mask = 0; mask < (uint64_t(1) << s_); ++mask) {
        double g = weights_.gamma(mask);
        gsub_[mask] = g == 0.0 ? 0.0
                               : g * std::exp2(factor_log2 *
                                               __builtin_popcountll(mask));
      }
      beta_.clear();  // grows one row per completed block
    }
    pi_.assign(n_points_, 1.0);
    tau_done_ = 0;
  }

  uint64_t n_candidates() const { return n_points_ - 1; }
  uint32_t next_slot() const { return tau_done_ % d_; }  // 0-based d0-1
  const std::vector<double>& coef() const { return coef_; }
  const std::vector<double>& slot_phitab() const {
    return phitab_[next_slot()];
  }
  const std::vector<uint8_t>& level_table() const { return lvltab_; }
  double constant_part() const { return k_; }

  // Must be called before scoring candidates for component tau_done_+1.
  void prepare_step() {
    const uint32_t j0 = tau_done_ / d_ + 1;  // block being filled
    base_.assign(n_points_, 0.0);
    coef_.assign(n_points_, 0.0);
    if (weights_.is_product()) {
      const double g = gj_[j0 - 1];
      parallel_chunks(n_points_, 4096, [&](uint64_t lo, uint64_t hi) {
        for (uint64_t n = lo; n < hi; ++n) {
          base_[n] = wfull_[n] * (1.0 - g) - 1.0;
          coef_[n] = g * wfull_[n] * pi_[n];
        }
      });
    } else {
      const uint32_t done_blocks = j0 - 1;
      const uint64_t top = uint64_t(1) << done_blocks;
      const uint64_t j0bit = uint64_t(1) << (j0 - 1);
      parallel_chunks(n_points_, 1024, [&](uint64_t lo, uint64_t hi) {
        std::vector<double> prod(top);
        for (uint64_t n = lo; n < hi; ++n) {
          prod[0] = 1.0;
          double a = 0.0, c = gsub_[j0bit];
          for (uint64_t mask = 1; mask < top; ++mask) {
            const uint32_t low = __builtin_ctzll(mask);
            prod[mask] = prod[mask & (mask - 1)] * beta_[low][n];
            a += gsub_[mask] * prod[mask];
            c += gsub_[mask | j0bit] * prod[mask];
          }
          base_[n] = a - c;
          coef_[n] = c * pi_[n];
        }
      });
    }
    double k = 0.0;
    for (uint64_t n = 0; n < n_points_; ++n) k += base_[n] + coef_[n];
    k_ = k;
  }

  // Exact prefix criterion with enc as the next component; the correctness
  // reference the transform path re-scores its shortlist against.
  double score(uint64_t enc) const {
    const std::vector<double>& tab = phitab_[next_slot()];
    double s = 0.0;
    for_each_residue_multiple(poly_from_int(enc, b_), p_, m_,
                              [&](uint64_t n, uint64_t res) {
                                s += coef_[n] * tab[lvltab_[res]];
                              });
    return (k_ + s) / static_cast<double>(n_points_);
  }

  // Fold the chosen component into the per-point state.
  void advance(uint64_t enc) {
    const std::vector<double>& tab = phitab_[next_slot()];
    for_each_residue_multiple(poly_from_int(enc, b_), p_, m_,
                              [&](uint64_t n, uint64_t res) {
                                pi_[n] *= 1.0 + tab[lvltab_[res]];
                              });
    ++tau_done_;
    if (tau_done_ % d_ == 0) {  // block complete
      const uint32_t j0 = tau_done_ / d_;
      if (weights_.is_product()) {
        const double g = gj_[j0 - 1];
        for (uint64_t n = 0; n < n_points_; ++n) {
          wfull_[n] *= 1.0 + g * (pi_[n] - 1.0);
          pi_[n] = 1.0;
        }
      } else {
        std::vector<double> row(n_points_);
        for (uint64_t n = 0; n < n_points_; ++n) {
          row[n] = pi_[n] - 1.0;
          pi_[n] = 1.0;
        }
        beta_.push_back(std::move(row));
      }
    }
  }

 private:
  uint32_t b_, m_, s_, d_;
  bool is_b1_;
  Weights weights_;
  Poly p_;
  uint64_t n_points_;
  std::vector<uint8_t> lvltab_;
  std::vector<std::vector<double>> phitab_;  // slot l-1 -> level table
  std::vector<double> gj_;                   // product: inflated gamma_j
  std::vector<double> gsub_;                 // general: inflated subset table
  std::vector<double> wfull_;  // product: running product, completed blocks
  std::vector<std::vector<double>> beta_;  // general: block value per point
  std::vector<double> pi_;                 // partial product, current block
  std::vector<double> base_, coef_;        // per-point linear form
  double k_ = 0.0;
  uint32_t tau_done_ = 0;
};

CriterionKind result_kind(const SearchConfig& c) { return c.criterion; }

CriterionValue make_value(const SearchConfig& c, double v) {
  return CriterionValue{v, result_kind(c), std::nullopt, std::nullopt};
}

SearchResult assemble(const SearchConfig& config, const Poly& p,
                      std::vector<uint64_t> encs,
                      std::vector<CriterionValue> trace, Algorithm algo,
                      double elapsed) {
  std::vector<Poly> q;
  q.reserve(encs.size());
  for (uint64_t e : encs) q.push_back(poly_from_int(e, config.b));
  PolyLatticeRule base(config.b, config.m, p, std::move(q));
  return SearchResult{InterlacedRule(config.d, config.s, std::move(base)),
                      std::move(trace), algo, elapsed};
}

SearchResult cbc_common(const SearchConfig& config, bool fast) {
  const auto t0 = std::chrono::steady_clock::now();
  const Poly p = config.validate();
  if (fast && !config.weights.is_product()) {
    throw std::invalid_argument("fast path requires product weights");
  }
  const uint32_t ds = config.d * config.s;
  const uint64_t n_cand = pow_u64(config.b, config.m) - 1;
  CbcEngine engine(config, p);

  // Transform-path tables: residues ordered along the cyclic group, so the
  // candidate sweep becomes a circular correlation.
  std::vector<uint64_t> pow_of;
  if (fast) {
    const Poly g = find_group_generator(p);
    pow_of.resize(n_cand);
    uint64_t cur = 1;
    for (uint64_t i = 0; i < n_cand; ++i) {
      pow_of[i] = cur;
      cur = poly_to_int(poly_mul_mod(poly_from_int(cur, config.b), g, p));
    }
  }

  std::vector<uint64_t> encs;
  std::vector<CriterionValue> trace;
  for (uint32_t tau = 1; tau <= ds; ++tau) {
    engine.prepare_step();
    Candidate best;
    if (tau == 1) {
      best = {engine.score(1), 1};  // q_1 = 1 by definition
    } else if (!fast) {
      best = chunked_reduce<Candidate>(
          n_cand, 16,
          [&](uint64_t lo, uint64_t hi) {
            Candidate local;
            for (uint64_t i = lo; i < hi; ++i) {
              local = better(local, {engine.score(i + 1), i + 1});
            }
            return local;
          },
          better, Candidate{});
    } else {
      const std::vector<double>& coef = engine.coef();
      const std::vector<double>& tab = engine.slot_phitab();
      const std::vector<uint8_t>& lvl = engine.level_table();
      std::vector<double> a(n_cand), t(n_cand);
      double coef_norm = 0.0, tab_max = 0.0;
      for (uint64_t i = 0; i < n_cand; ++i) {
        a[i] = coef[pow_of[i]];
        t[i] = tab[lvl[pow_of[i]]];
        coef_norm += std::fabs(a[i]);
        tab_max = std::max(tab_max, std::fabs(t[i]));
      }
      const double norm = coef_norm * tab_max;
      if (norm == 0.0) {
        best = {engine.score(1), 1};
      } else {
        const std::vector<double> corr = circular_correlation(a, t);
        double corr_min = corr[0];
        for (double v : corr) corr_min = std::min(corr_min, v);
        // Everything within transform round-off of the minimum gets an
        // exact re-score; the winner therefore matches the plain path
        // bit for bit, tie-break included.
        const double cutoff =
            corr_min + 1e-9 * (norm + std::fabs(corr_min));
        for (uint64_t j = 0; j < n_cand; ++j) {
          if (corr[j] <= cutoff) {
            const uint64_t enc = pow_of[j];
            best = better(best, {engine.score(enc), enc});
          }
        }
      }
    }
    encs.push_back(best.enc);
    trace.push_back(make_value(config, best.value));
    engine.advance(best.enc);
  }
  return assemble(config, p, std::move(encs), std::move(trace),
                  fast ? Algorithm::FastCbc : Algorithm::Cbc,
                  seconds_since(t0));
}

CriterionValue eval_full(const SearchConfig& config, const Poly& p,
                         const std::vector<uint64_t>& encs) {
  std::vector<Poly> q;
  q.reserve(encs.size());
  for (uint64_t e : encs) q.push_back(poly_from_int(e, config.b));
  InterlacedRule rule(config.d, config.s,
                      PolyLatticeRule(config.b, config.m, p, std::move(q)));
  return config.criterion.is_b1()
             ? eval_b1(rule, config.weights, config.criterion.alpha)
             : eval_b2(rule, config.weights);
}

}  // namespace

SearchResult cbc_construct(const SearchConfig& config) {
  return cbc_common(config, false);
}

SearchResult fast_cbc_construct(const SearchConfig& config) {
  return cbc_common(config, true);
}

SearchResult korobov_construct(const SearchConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const Poly p = config.validate();
  const uint32_t ds = config.d * config.s;
  const uint64_t n_cand = pow_u64(config.b, config.m) - 1;

  Candidate best;
  std::vector<uint64_t> best_encs;
  for (uint64_t cand = 1; cand <= n_cand; ++cand) {
    const Poly qt = poly_from_int(cand, config.b);
    std::vector<uint64_t> encs(ds);
    Poly cur = poly_from_int(1, config.b);
    for (uint32_t j = 0; j < ds; ++j) {
      encs[j] = poly_to_int(cur);
      cur = poly_mul_mod(cur, qt, p);
    }
    const double v = eval_full(config, p, encs).value;
    if (v < best.value) {  // strict: first (smallest) candidate wins ties
      best = {v, cand};
      best_encs = std::move(encs);
    }
  }
  return assemble(config, p, std::move(best_encs),
                  {make_value(config, best.value)}, Algorithm::Korobov,
                  seconds_since(t0));
}

SearchResult exhaustive_construct(const SearchConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const Poly p = config.validate();
  const uint32_t ds = config.d * config.s;
  const uint64_t n_cand = pow_u64(config.b, config.m) - 1;
  double combos = 1.0;
  for (uint32_t i = 0; i + 1 < ds; ++i) combos *= static_cast<double>(n_cand);
  if (combos > 1e6) {
    throw GuardError("exhaustive search restricted to desk scale");
  }

  std::vector<uint64_t> encs(ds, 1);
  Candidate best;
  std::vector<uint64_t> best_encs;
  for (;;) {
    const double v = eval_full(config, p, encs).value;
    if (v < best.value) {  // ascending lexicographic scan; first win stays
      best = {v, 0};
      best_encs = encs;
    }
    uint32_t pos = ds;  // odometer over components 2..ds, last fastest
    while (pos > 1 && encs[pos - 1] == n_cand) encs[--pos] = 1;
    if (pos == 1) break;
    ++encs[pos - 1];
  }
  return assemble(config, p, std::move(best_encs),
                  {make_value(config, best.value)}, Algorithm::Exhaustive,
                  seconds_since(t0));
}

}  // namespace iplr
