#include "ckmax/space.hpp"

#include <cmath>
#include <stdexcept>

namespace ckmax {

AtomicSpace::AtomicSpace(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw std::invalid_argument("AtomicSpace: at least one atom required");
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("AtomicSpace: atom weights must be positive and finite");
    }
    total_ += w;
  }
}

AtomicSpace AtomicSpace::uniform(std::size_t n) {
  return AtomicSpace(std::vector<double>(n, 1.0));
}

LatticeVector::LatticeVector(AtomicSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw DimensionMismatch("LatticeVector: value count does not match atom count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("LatticeVector: values must be finite");
    }
  }
}

LatticeVector LatticeVector::zeros(const AtomicSpace& space) {
  return LatticeVector(space, std::vector<double>(space.size(), 0.0));
}

LatticeVector LatticeVector::ones(const AtomicSpace& space) {
  return LatticeVector(space, std::vector<double>(space.size(), 1.0));
}

LatticeVector LatticeVector::delta(const AtomicSpace& space, std::size_t atom,
                                   double value) {
  std::vector<double> v(space.size(), 0.0);
  v.at(atom) = value;
  return LatticeVector(space, std::move(v));
}

LatticeVector LatticeVector::indicator(const AtomicSpace& space,
                                       const std::vector<std::size_t>& atoms) {
  std::vector<double> v(space.size(), 0.0);
  for (std::size_t i : atoms) v.at(i) = 1.0;
  return LatticeVector(space, std::move(v));
}

LatticeVector LatticeVector::restricted(const std::vector<char>& mask) const {
  if (mask.size() != values_.size()) {
    throw DimensionMismatch("restricted: mask size mismatch");
  }
  std::vector<double> v(values_.size(), 0.0);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (mask[i]) v[i] = values_[i];
  }
  return LatticeVector(space_, std::move(v));
}

LatticeVector LatticeVector::restricted(const std::vector<std::size_t>& atoms) const {
  std::vector<double> v(values_.size(), 0.0);
  for (std::size_t i : atoms) v.at(i) = values_[i];
  return LatticeVector(space_, std::move(v));
}

std::vector<std::size_t> LatticeVector::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) s.push_back(i);
  }
  return s;
}

bool LatticeVector::is_zero() const {
  for (double v : values_) {
    if (v != 0.0) return false;
  }
  return true;
}

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("operator+: size mismatch");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] + b[i];
  return LatticeVector(a.space(), std::move(v));
}

LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("operator-: size mismatch");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i] - b[i];
  return LatticeVector(a.space(), std::move(v));
}

LatticeVector operator*(double c, const LatticeVector& f) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = c * f[i];
  return LatticeVector(f.space(), std::move(v));
}

LatticeVector abs(const LatticeVector& f) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = std::abs(f[i]);
  return LatticeVector(f.space(), std::move(v));
}

bool dominated(const LatticeVector& g, const LatticeVector& f) {
  if (g.size() != f.size()) throw DimensionMismatch("dominated: size mismatch");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g[i]) > std::abs(f[i])) return false;
  }
  return true;
}

}  // namespace ckmax
