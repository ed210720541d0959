#pragma once

#include <vector>

namespace ckmax {

/// A weight w >= 0 on (0, inf) from a closed family, with the primitive
/// W(t) = integral of w over (0, t] evaluable in closed form. Two kinds:
///   power:     w(t) = c * t^a with c > 0, a > -1
///   piecewise: w constant on (0, b_1], (b_1, b_2], ..., (b_k, inf)
class WeightFunction {
 public:
  enum class Kind { Power, PiecewiseConstant };

  static WeightFunction power(double c, double a);
  static WeightFunction piecewise(std::vector<double> breakpoints,
                                  std::vector<double> levels);
  /// The classical Lorentz weight w(t) = (r/p) t^{r/p-1}, so W(t) = t^{r/p}.
  static WeightFunction lorentz(double p, double r);

  double w(double t) const;
  double W(double t) const;

  bool nonincreasing() const;
  Kind kind() const { return kind_; }
  double power_c() const { return c_; }
  double power_a() const { return a_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& levels() const { return levels_; }

  /// Exact tail integral of (A/t)^r w(t) over (T, inf); +inf if divergent.
  /// This is the constant-average tail that closes every Gamma-norm
  /// integral on a finite measure space.
  double tail_integral(double T, double A, double r) const;

 private:
  WeightFunction() = default;
  Kind kind_ = Kind::Power;
  double c_ = 1.0, a_ = 0.0;          // power kind
  std::vector<double> breakpoints_;   // piecewise kind, strictly increasing
  std::vector<double> levels_;        // breakpoints_.size() + 1 entries
  std::vector<double> cumW_;          // W at each breakpoint, precomputed
};

}  // namespace ckmax
