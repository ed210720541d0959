#include "ckmax/weight.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ckmax {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Integral of t^e over (x0, x1), 0 < x0 < x1 <= inf, e arbitrary.
double power_integral(double x0, double x1, double e) {
  if (std::isinf(x1)) {
    if (e >= -1.0) return kInf;
    return -std::pow(x0, e + 1.0) / (e + 1.0);
  }
  if (e == -1.0) return std::log(x1 / x0);
  return (std::pow(x1, e + 1.0) - std::pow(x0, e + 1.0)) / (e + 1.0);
}
}  // namespace

WeightFunction WeightFunction::power(double c, double a) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("WeightFunction::power: c must be positive");
  }
  if (!(a > -1.0) || !std::isfinite(a)) {
    throw std::invalid_argument("WeightFunction::power: need a > -1 for W to be finite");
  }
  WeightFunction w;
  w.kind_ = Kind::Power;
  w.c_ = c;
  w.a_ = a;
  return w;
}

WeightFunction WeightFunction::piecewise(std::vector<double> breakpoints,
                                         std::vector<double> levels) {
  if (levels.size() != breakpoints.size() + 1) {
    throw std::invalid_argument("WeightFunction::piecewise: need one more level than breakpoints");
  }
  double prev = 0.0;
  for (double b : breakpoints) {
    if (!(b > prev) || !std::isfinite(b)) {
      throw std::invalid_argument("WeightFunction::piecewise: breakpoints must be positive and increasing");
    }
    prev = b;
  }
  for (double l : levels) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw std::invalid_argument("WeightFunction::piecewise: levels must be nonnegative");
    }
  }
  WeightFunction w;
  w.kind_ = Kind::PiecewiseConstant;
  w.breakpoints_ = std::move(breakpoints);
  w.levels_ = std::move(levels);
  w.cumW_.resize(w.breakpoints_.size());
  double acc = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i < w.breakpoints_.size(); ++i) {
    acc += w.levels_[i] * (w.breakpoints_[i] - lo);
    w.cumW_[i] = acc;
    lo = w.breakpoints_[i];
  }
  return w;
}

WeightFunction WeightFunction::lorentz(double p, double r) {
  if (!(p > 0.0) || !(r > 0.0)) {
    throw std::invalid_argument("WeightFunction::lorentz: p, r must be positive");
  }
  return power(r / p, r / p - 1.0);
}

double WeightFunction::w(double t) const {
  if (!(t > 0.0)) throw std::domain_error("WeightFunction::w: t must be positive");
  if (kind_ == Kind::Power) return c_ * std::pow(t, a_);
  std::size_t i = 0;
  while (i < breakpoints_.size() && t > breakpoints_[i]) ++i;
  return levels_[i];
}

double WeightFunction::W(double t) const {
  if (t <= 0.0) return 0.0;
  if (kind_ == Kind::Power) return c_ * std::pow(t, a_ + 1.0) / (a_ + 1.0);
  double acc = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (t <= breakpoints_[i]) {
      return acc + levels_[i] * (t - lo);
    }
    acc = cumW_[i];
    lo = breakpoints_[i];
  }
  return acc + levels_.back() * (t - lo);
}

bool WeightFunction::nonincreasing() const {
  if (kind_ == Kind::Power) return a_ <= 0.0;
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (levels_[i] > levels_[i - 1]) return false;
  }
  return true;
}

double WeightFunction::tail_integral(double T, double A, double r) const {
  if (!(T > 0.0)) throw std::domain_error("tail_integral: T must be positive");
  if (A == 0.0) return 0.0;
  double Ar = std::pow(A, r);
  if (kind_ == Kind::Power) {
    double v = power_integral(T, kInf, a_ - r);
    return std::isinf(v) ? kInf : c_ * Ar * v;
  }
  double acc = 0.0;
  double lo = T;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    double hi = breakpoints_[i];
    if (hi <= lo) continue;
    acc += levels_[i] * Ar * power_integral(lo, hi, -r);
    lo = hi;
  }
  if (levels_.back() > 0.0) {
    double v = power_integral(lo, kInf, -r);
    if (std::isinf(v)) return kInf;
    acc += levels_.back() * Ar * v;
  }
  return acc;
}

}  // namespace ckmax
