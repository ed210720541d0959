#pragma once

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include "ckmax/quasi_norm.hpp"
#include "ckmax/search.hpp"
#include "ckmax/space.hpp"

namespace ckmax {

/// A finite nested chain of atom-index sets over a domain space. Sets may
/// repeat or be empty; inclusion along the chain is verified.
class Filtration {
 public:
  Filtration(std::size_t domain_size, std::vector<std::vector<std::size_t>> chain);

  /// {0}, {0,1}, ..., {0,...,n-1}.
  static Filtration prefixes(std::size_t n);
  /// Prefixes of a random permutation cut at random nested lengths.
  static Filtration random_nested(std::size_t n, int length, std::mt19937_64& rng);

  std::size_t domain_size() const { return domain_size_; }
  std::size_t length() const { return chain_.size(); }
  const std::vector<std::size_t>& set(std::size_t k) const { return chain_[k]; }
  const std::vector<char>& mask(std::size_t k) const { return masks_[k]; }

 private:
  std::size_t domain_size_;
  std::vector<std::vector<std::size_t>> chain_;
  std::vector<std::vector<char>> masks_;
};

inline double scalar_abs(double x) { return x < 0 ? -x : x; }
inline double scalar_abs(const std::complex<double>& z) { return std::abs(z); }

/// A dense matrix operator between two atomic spaces. Measure weights are
/// carried by the norms, not the matrix.
template <typename Scalar>
class DenseOp {
 public:
  DenseOp(AtomicSpace domain, AtomicSpace codomain, std::vector<Scalar> row_major)
      : domain_(std::move(domain)),
        codomain_(std::move(codomain)),
        a_(std::move(row_major)) {
    if (a_.size() != domain_.size() * codomain_.size()) {
      throw DimensionMismatch("DenseOp: entry count does not match the two spaces");
    }
  }

  const AtomicSpace& domain() const { return domain_; }
  const AtomicSpace& codomain() const { return codomain_; }
  std::size_t rows() const { return codomain_.size(); }
  std::size_t cols() const { return domain_.size(); }
  Scalar entry(std::size_t i, std::size_t j) const { return a_[i * cols() + j]; }
  const std::vector<Scalar>& entries() const { return a_; }

  std::vector<Scalar> apply_raw(const std::vector<Scalar>& x) const {
    if (x.size() != cols()) throw DimensionMismatch("DenseOp::apply: size mismatch");
    std::vector<Scalar> y(rows(), Scalar(0));
    for (std::size_t i = 0; i < rows(); ++i) {
      Scalar s(0);
      const Scalar* row = a_.data() + i * cols();
      for (std::size_t j = 0; j < cols(); ++j) s += row[j] * x[j];
      y[i] = s;
    }
    return y;
  }

  /// Image of f restricted to a mask. Every consumer of restricted images
  /// goes through this one loop so identities between the maximal operator
  /// and the triangular sums hold bit-exactly.
  std::vector<Scalar> apply_masked(const std::vector<Scalar>& x,
                                   const std::vector<char>& mask) const {
    if (x.size() != cols() || mask.size() != cols()) {
      throw DimensionMismatch("DenseOp::apply_masked: size mismatch");
    }
    std::vector<Scalar> y(rows(), Scalar(0));
    for (std::size_t i = 0; i < rows(); ++i) {
      Scalar s(0);
      const Scalar* row = a_.data() + i * cols();
      for (std::size_t j = 0; j < cols(); ++j) {
        if (mask[j]) s += row[j] * x[j];
      }
      y[i] = s;
    }
    return y;
  }

 private:
  AtomicSpace domain_;
  AtomicSpace codomain_;
  std::vector<Scalar> a_;
};

using LinearOp = DenseOp<double>;
using ComplexOp = DenseOp<std::complex<double>>;

LatticeVector apply(const LinearOp& T, const LatticeVector& f);

/// Pointwise max over the chain of |T(f chi_{A_k})|.
template <typename Scalar>
std::vector<double> maximal_apply_raw(const DenseOp<Scalar>& T, const Filtration& A,
                                      const std::vector<Scalar>& values);

LatticeVector maximal_apply(const LinearOp& T, const Filtration& A,
                            const LatticeVector& f);

/// sum_{1<=j<=k<=n} chi_{tilde Omega_k} T(f chi_{Omega_j}), computed through
/// the prefix unions A_k = Omega_1 u ... u Omega_k.
template <typename Scalar>
std::vector<Scalar> triangular_apply_raw(const DenseOp<Scalar>& T,
                                         const std::vector<std::vector<std::size_t>>& omega,
                                         const std::vector<std::vector<std::size_t>>& omega_tilde,
                                         const std::vector<Scalar>& values);

LatticeVector triangular_apply(const LinearOp& T,
                               const std::vector<std::vector<std::size_t>>& omega,
                               const std::vector<std::vector<std::size_t>>& omega_tilde,
                               const LatticeVector& f);

struct SelectorParts {
  std::vector<std::vector<std::size_t>> omega;        // successive differences
  std::vector<std::vector<std::size_t>> omega_tilde;  // argmax selector sets
};

/// The disjoint decomposition that turns a maximal-operator evaluation into
/// one triangular sum: Omega_k are the chain differences and each codomain
/// atom is tagged by the first chain index attaining its maximum.
template <typename Scalar>
SelectorParts selector_parts(const DenseOp<Scalar>& T, const Filtration& A,
                             const std::vector<Scalar>& values);

/// The Koethe dual operator: entries T'[i][j] = (nu_j / mu_i) T[j][i], so
/// that the pairing sum g.(Tf) nu = sum f.(T'g) mu holds for all f, g.
template <typename Scalar>
DenseOp<Scalar> kothe_dual_op(const DenseOp<Scalar>& T);

/// Closed-form operator norm when one exists: weighted-L1 domain into any
/// normed codomain (column maximum), or sup-norm codomain from a weighted
/// L^p domain (row dual norms). Empty when no closed form applies.
template <typename Scalar>
std::optional<double> op_norm_exact(const DenseOp<Scalar>& T, const QuasiNorm& dom_norm,
                                    const QuasiNorm& cod_norm);

/// Certified lower bound on sup ||Tf|| / ||f|| by seeded multistart ascent.
template <typename Scalar>
EstimateResult op_norm_search(const DenseOp<Scalar>& T, const QuasiNorm& dom_norm,
                              const QuasiNorm& cod_norm, const SearchConfig& cfg);

struct CKReport {
  EstimateResult op_norm;
  double kappa = 1.0;
  double ell = 1.0;
  double u = 1.0;
  double gamma = 1.0;
  double max_ratio = 0.0;
  long long trial_count = 0;
  std::vector<double> worst_witness_re;
  std::vector<double> worst_witness_im;  // empty for real operators
  double tolerance = 1e-9;
  bool verdict_available = false;  // true iff op_norm is exact
  bool pass = false;               // max_ratio <= gamma * ||T|| * (1+tol)
  double margin = 0.0;             // max_ratio / (gamma * op_norm.value)
};

struct CKOptions {
  std::optional<double> ell;    // supplied two-term constants when the
  std::optional<double> u;      // family has no closed form
  std::optional<double> kappa;
};

/// Samples random and adversarial inputs against gamma * ||T|| * ||f||.
/// The verdict is only available when the operator norm is exact; with a
/// searched lower bound the margin is informational.
template <typename Scalar>
CKReport ck_verify_impl(const DenseOp<Scalar>& T, const QuasiNorm& dom_norm,
                        const QuasiNorm& cod_norm, const Filtration& A, Index p,
                        Index q, const SearchConfig& cfg, const CKOptions& opt = {});

CKReport ck_verify(const LinearOp& T, const QuasiNorm& dom_norm,
                   const QuasiNorm& cod_norm, const Filtration& A, Index p, Index q,
                   const SearchConfig& cfg, const CKOptions& opt = {});

struct DualVerifyReport {
  CKReport ck;  // the run on the dual operator with conjugate exponents
  double primal_norm = 0.0;
  bool primal_norm_exact = false;
  double dual_norm = 0.0;
  bool dual_norm_exact = false;
  bool norm_consistency = true;    // ||T'|| <= ||T|| whenever comparable
  double pairing_max_rel_err = 0.0;
};

/// Runs the harness on the Koethe dual operator with dual exponents and
/// dual norms, and checks the pairing identity and norm consistency.
DualVerifyReport dual_maximal_verify(const LinearOp& T, const QuasiNorm& dom_norm,
                                     const QuasiNorm& cod_norm, const Filtration& A_cod,
                                     Index p, Index q, const SearchConfig& cfg);

}  // namespace ckmax
