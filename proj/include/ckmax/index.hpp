#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ckmax {

/// A Lebesgue-type exponent in (0, inf]. Infinity is a first-class value so
/// that every "usual modification" (sums become maxima, 1/inf = 0) can key
/// off it instead of relying on IEEE edge cases scattered around call sites.
class Index {
 public:
  Index(double v) : v_(v) {
    if (std::isnan(v_) || v_ <= 0.0) {
      throw std::domain_error("Index: exponent must lie in (0, inf], got " +
                              std::to_string(v));
    }
  }

  static Index infinity() { return Index(std::numeric_limits<double>::infinity()); }

  bool is_inf() const { return std::isinf(v_); }
  double value() const { return v_; }

  /// 1/p with the convention 1/inf = 0.
  double inv() const { return is_inf() ? 0.0 : 1.0 / v_; }

  /// Hoelder conjugate p' with 1/p + 1/p' = 1. Defined for p >= 1.
  Index conjugate() const {
    if (v_ < 1.0) {
      throw std::domain_error("Index::conjugate requires p >= 1");
    }
    if (is_inf()) return Index(1.0);
    if (v_ == 1.0) return infinity();
    return Index(v_ / (v_ - 1.0));
  }

  friend bool operator==(const Index& a, const Index& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Index& a, const Index& b) { return a.v_ != b.v_; }
  friend bool operator<(const Index& a, const Index& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Index& a, const Index& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Index& a, const Index& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Index& a, const Index& b) { return a.v_ >= b.v_; }

 private:
  double v_;
};

inline double pow2(double e) { return std::exp2(e); }

/// max(1, 2^{1/p - 1}); the triangle constant of L^p and of the p-sum step
/// in two-level compositions.
inline double lp_triangle_constant(Index p) {
  return std::max(1.0, pow2(p.inv() - 1.0));
}

/// (sum_j x_j^p)^{1/p} with the max modification at p = inf.
/// Values must be nonnegative.
inline double p_sum(const double* x, std::size_t n, Index p) {
  if (n == 0) return 0.0;
  if (p.is_inf()) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, x[i]);
    return m;
  }
  double pe = p.value();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::pow(x[i], pe);
  return std::pow(s, 1.0 / pe);
}

}  // namespace ckmax
