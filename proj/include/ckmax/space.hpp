#pragma once

#include <cstddef>
#include <vector>

#include "ckmax/errors.hpp"

namespace ckmax {

/// A finite, purely atomic measure space: an ordered list of atom weights.
/// All lattices in this toolkit live over such a space.
class AtomicSpace {
 public:
  explicit AtomicSpace(std::vector<double> weights);

  /// n atoms of unit weight.
  static AtomicSpace uniform(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  double total_measure() const { return total_; }

  friend bool operator==(const AtomicSpace& a, const AtomicSpace& b) {
    return a.weights_ == b.weights_;
  }

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// A real-valued function on an AtomicSpace, one value per atom.
class LatticeVector {
 public:
  LatticeVector(AtomicSpace space, std::vector<double> values);

  static LatticeVector zeros(const AtomicSpace& space);
  static LatticeVector ones(const AtomicSpace& space);
  static LatticeVector delta(const AtomicSpace& space, std::size_t atom,
                             double value = 1.0);
  /// Indicator of an index set.
  static LatticeVector indicator(const AtomicSpace& space,
                                 const std::vector<std::size_t>& atoms);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  const AtomicSpace& space() const { return space_; }

  /// f restricted to the atoms where mask is nonzero; zero elsewhere.
  LatticeVector restricted(const std::vector<char>& mask) const;
  LatticeVector restricted(const std::vector<std::size_t>& atoms) const;

  std::vector<std::size_t> support() const;
  bool is_zero() const;

 private:
  AtomicSpace space_;
  std::vector<double> values_;
};

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b);
LatticeVector operator-(const LatticeVector& a, const LatticeVector& b);
LatticeVector operator*(double c, const LatticeVector& f);
LatticeVector abs(const LatticeVector& f);

/// True if |g| <= |f| atomwise.
bool dominated(const LatticeVector& g, const LatticeVector& f);

}  // namespace ckmax
