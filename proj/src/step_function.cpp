#include "ckmax/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ckmax {

StepFunction::StepFunction(std::vector<StepPiece> pieces) {
  double prev = std::numeric_limits<double>::infinity();
  for (const StepPiece& p : pieces) {
    if (!(p.length > 0.0) || !std::isfinite(p.length)) {
      throw std::invalid_argument("StepFunction: piece lengths must be positive");
    }
    if (!(p.level >= 0.0) || !std::isfinite(p.level)) {
      throw std::invalid_argument("StepFunction: piece levels must be nonnegative");
    }
    if (p.level > prev) {
      throw std::invalid_argument("StepFunction: levels must be nonincreasing");
    }
    prev = p.level;
  }
  for (const StepPiece& p : pieces) {
    if (p.level == 0.0) break;  // zero tail is implicit
    if (!pieces_.empty() && pieces_.back().level == p.level) {
      pieces_.back().length += p.length;
    } else {
      pieces_.push_back(p);
    }
  }
}

double StepFunction::total_length() const {
  double t = 0.0;
  for (const StepPiece& p : pieces_) t += p.length;
  return t;
}

double StepFunction::value_at(double t) const {
  double cum = 0.0;
  for (const StepPiece& p : pieces_) {
    cum += p.length;
    if (t < cum) return p.level;
  }
  return 0.0;
}

double StepFunction::integral_to(double t) const {
  if (t <= 0.0) return 0.0;
  double cum = 0.0;
  double area = 0.0;
  for (const StepPiece& p : pieces_) {
    if (t <= cum + p.length) {
      return area + p.level * (t - cum);
    }
    area += p.level * p.length;
    cum += p.length;
  }
  return area;
}

double StepFunction::total_integral() const {
  double area = 0.0;
  for (const StepPiece& p : pieces_) area += p.level * p.length;
  return area;
}

namespace {

// (|value|, weight) pairs, stable-sorted by value descending. Zero values
// are dropped; they never contribute to the distribution or rearrangement.
std::vector<std::pair<double, double>> sorted_abs_pairs(
    const std::vector<double>& values, const std::vector<double>& weights) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double a = std::abs(values[i]);
    if (a > 0.0) pairs.emplace_back(a, weights[i]);
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  return pairs;
}

StepFunction distribution_of_pairs(std::vector<std::pair<double, double>> pairs) {
  // Group end k has cumulative measure S_k of the atoms with value >= y_k.
  // mu_f equals S_m on [0, y_m), S_{m-1} on [y_m, y_{m-1}), ..., 0 beyond y_1.
  // Weights are summed within each value group before being added to the
  // running total, the same association the rearrangement's merge uses, so
  // the two routes to the distribution agree bit for bit.
  std::vector<double> levels;   // y_1 > y_2 > ... > y_m
  std::vector<double> cums;     // S_1 < S_2 < ... < S_m
  double running = 0.0;
  double group = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    group += pairs[i].second;
    if (i + 1 == pairs.size() || pairs[i + 1].first != pairs[i].first) {
      running += group;
      group = 0.0;
      levels.push_back(pairs[i].first);
      cums.push_back(running);
    }
  }
  std::vector<StepPiece> pieces;
  pieces.reserve(levels.size());
  for (std::size_t k = levels.size(); k-- > 0;) {
    double lo = (k + 1 < levels.size()) ? levels[k + 1] : 0.0;
    pieces.push_back({cums[k], levels[k] - lo});
  }
  return StepFunction(std::move(pieces));
}

}  // namespace

StepFunction distribution(const LatticeVector& f) {
  return distribution_of_pairs(sorted_abs_pairs(f.values(), f.space().weights()));
}

StepFunction distribution(const StepFunction& fstar) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(fstar.pieces().size());
  for (const StepPiece& p : fstar.pieces()) pairs.emplace_back(p.level, p.length);
  return distribution_of_pairs(std::move(pairs));
}

StepFunction rearrangement(const LatticeVector& f) {
  auto pairs = sorted_abs_pairs(f.values(), f.space().weights());
  std::vector<StepPiece> pieces;
  pieces.reserve(pairs.size());
  for (const auto& [value, weight] : pairs) pieces.push_back({value, weight});
  return StepFunction(std::move(pieces));
}

double double_star(const StepFunction& fstar, double t) {
  if (!(t > 0.0)) throw std::domain_error("double_star: t must be positive");
  return fstar.integral_to(t) / t;
}

}  // namespace ckmax
