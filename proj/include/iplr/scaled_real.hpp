#ifndef IPLR_SCALED_REAL_HPP
#define IPLR_SCALED_REAL_HPP

#include <cmath>
#include <cstdint>
#include <limits>

// Signed real carried as mantissa * 2^exponent with the exponent tracked
// separately, so long products of large factors (the inflated weights can
// exceed 2^500 per factor chain) neither overflow nor underflow. Convert to
// double only at the very end; an out-of-range result honestly becomes
// inf or 0.

namespace iplr {

class ScaledReal {
 public:
  ScaledReal() : man_(0.0), exp_(0) {}
  explicit ScaledReal(double v) { assign(v); }

  static ScaledReal zero() { return ScaledReal(); }
  static ScaledReal one() { return ScaledReal(1.0); }

  // 2^l for an l far outside double range
  static ScaledReal from_log2(double l) {
    ScaledReal r;
    double ip = std::floor(l);
    r.man_ = std::exp2(l - ip) * 0.5;  // in [0.5, 1)
    r.exp_ = static_cast<int64_t>(ip) + 1;
    return r;
  }

  bool is_zero() const { return man_ == 0.0; }

  ScaledReal& operator*=(const ScaledReal& o) {
    if (is_zero() || o.is_zero()) {
      man_ = 0.0;
      exp_ = 0;
      return *this;
    }
    int e = 0;
    man_ = std::frexp(man_ * o.man_, &e);
    exp_ += o.exp_ + e;
    return *this;
  }

  ScaledReal& operator+=(const ScaledReal& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      return *this;
    }
    // Align to the larger exponent; beyond ~64 bits the smaller addend is
    // below one ulp and drops out, matching plain double behaviour.
    const ScaledReal& big = exp_ >= o.exp_ ? *this : o;
    const ScaledReal& small = exp_ >= o.exp_ ? o : *this;
    int64_t diff = big.exp_ - small.exp_;
    double m;
    if (diff > 64) {
      m = big.man_;
    } else {
      m = big.man_ + std::ldexp(small.man_, -static_cast<int>(diff));
    }
    int64_t e0 = big.exp_;
    if (m == 0.0) {
      man_ = 0.0;
      exp_ = 0;
      return *this;
    }
    int e = 0;
    man_ = std::frexp(m, &e);
    exp_ = e0 + e;
    return *this;
  }

  ScaledReal operator*(const ScaledReal& o) const {
    ScaledReal r = *this;
    r *= o;
    return r;
  }
  ScaledReal operator+(const ScaledReal& o) const {
    ScaledReal r = *this;
    r += o;
    return r;
  }

  // this * 2^k
  ScaledReal scaled_by_pow2(int64_t k) const {
    ScaledReal r = *this;
    if (!r.is_zero()) r.exp_ += k;
    return r;
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    if (exp_ > 1100) {
      return man_ > 0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
    }
    if (exp_ < -1100) return man_ > 0 ? 0.0 : -0.0;
    return std::ldexp(man_, static_cast<int>(exp_));
  }

  // log2 of the absolute value; meaningful only for nonzero values.
  double log2_abs() const {
    return std::log2(std::fabs(man_)) + static_cast<double>(exp_);
  }

  double mantissa() const { return man_; }
  int64_t exponent() const { return exp_; }

 private:
  void assign(double v) {
    if (v == 0.0) {
      man_ = 0.0;
      exp_ = 0;
      return;
    }
    int e = 0;
    man_ = std::frexp(v, &e);
    exp_ = e;
  }

  double man_;   // 0, or |man_| in [0.5, 1)
  int64_t exp_;
};

}  // namespace iplr

#endif
