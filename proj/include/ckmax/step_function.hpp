#pragma once

#include <vector>

#include "ckmax/space.hpp"

namespace ckmax {

struct StepPiece {
  double level;
  double length;
  friend bool operator==(const StepPiece& a, const StepPiece& b) {
    return a.level == b.level && a.length == b.length;
  }
};

/// A nonnegative, nonincreasing, right-continuous step function on (0, inf),
/// identically zero beyond its recorded pieces. Construction canonicalizes:
/// adjacent equal levels are merged and the zero tail is dropped, so two
/// step functions are equal as functions iff their piece lists are equal.
class StepFunction {
 public:
  StepFunction() = default;
  explicit StepFunction(std::vector<StepPiece> pieces);

  const std::vector<StepPiece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  /// Length of the interval where the function is positive.
  double total_length() const;

  /// Right-continuous evaluation; 0 for t >= total_length().
  double value_at(double t) const;

  /// Exact piecewise integral over (0, t].
  double integral_to(double t) const;
  double total_integral() const;

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.pieces_ == b.pieces_;
  }

 private:
  std::vector<StepPiece> pieces_;
};

/// Distribution function tau -> mu(|f| > tau), encoded over tau-intervals:
/// piece k covers the tau-range of length `length` on which the measure
/// equals `level`.
StepFunction distribution(const LatticeVector& f);

/// Distribution of a step function, treating each piece as an atom of
/// weight `length` and value `level`. Shares the summation path with the
/// vector overload, so distribution(f) == distribution(rearrangement(f))
/// holds bit-exactly.
StepFunction distribution(const StepFunction& fstar);

/// Nonincreasing rearrangement: |values| sorted descending (stable, ties by
/// atom index), one piece per distinct value with the atom weights merged.
StepFunction rearrangement(const LatticeVector& f);

/// f**(t) = (1/t) * integral of fstar over (0, t]. Throws std::domain_error
/// for t <= 0.
double double_star(const StepFunction& fstar, double t);

}  // namespace ckmax
