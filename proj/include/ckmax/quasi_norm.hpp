#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ckmax/index.hpp"
#include "ckmax/search.hpp"
#include "ckmax/space.hpp"
#include "ckmax/step_function.hpp"
#include "ckmax/weight.hpp"

namespace ckmax {

/// ||f|| = (sum |f_i|^p mu_i)^{1/p}, ess-sup at p = inf.
struct WeightedLp {
  Index p;
};

/// ||f|| = (integral of (f*)^r w)^{1/r}; exact via the rearrangement pieces.
struct LorentzLambda {
  double r;
  WeightFunction weight;
};

/// ||f|| = (integral of (f**)^r w)^{1/r}; the averaged rearrangement makes
/// the integrand smooth but not piecewise-polynomial, so this family is the
/// one place quadrature enters (to relative tolerance quad_tol).
struct LorentzGamma {
  double r;
  WeightFunction weight;
  double quad_tol = 1e-9;
};

/// L_{p,r}: the power-weight Lorentz family, kept separate so the norm and
/// triangle constant use closed forms. r = inf is the weak-type norm
/// sup t^{1/p} f*(t).
struct ClassicalLorentz {
  double p;
  Index r;
};

/// Wiener amalgam over a contiguous block partition: local L^r mass per
/// block combined in l^s across blocks.
struct Amalgam {
  Index local;   // r
  Index outer;   // s
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // half-open ranges
};

using NormFamily =
    std::variant<WeightedLp, LorentzLambda, LorentzGamma, ClassicalLorentz, Amalgam>;

/// An evaluable lattice quasi-norm on a fixed AtomicSpace.
class QuasiNorm {
 public:
  QuasiNorm(AtomicSpace space, NormFamily family);

  const AtomicSpace& space() const { return space_; }
  const NormFamily& family() const { return family_; }

  double operator()(const LatticeVector& f) const;

  /// The tabulated triangle constant of the family, when one is known.
  std::optional<double> kappa_opt() const noexcept;
  /// As above but throws UnknownKappa when the family has no tabulated value.
  double kappa() const;
  bool is_norm() const { return kappa_opt() == 1.0; }

  /// The Koethe dual space with its exact norm; available for the
  /// WeightedLp family with p >= 1 (the Hoelder conjugate on the same atoms).
  std::optional<QuasiNorm> exact_dual() const;

  /// Closed-form value of the dual norm sup{ sum |f g| mu : ||f|| <= 1 };
  /// available for WeightedLp at every p in (0, inf].
  std::optional<double> exact_dual_norm_value(const LatticeVector& g) const;

 private:
  AtomicSpace space_;
  NormFamily family_;
};

inline double triangle_constant(const QuasiNorm& n) { return n.kappa(); }

/// sup{ sum_i |f_i g_i| mu_i : ||f|| <= 1 }. Exact for WeightedLp; otherwise
/// a certified lower bound from coordinate ascent with restarts.
EstimateResult kothe_dual_norm(const QuasiNorm& norm, const LatticeVector& g,
                               const SearchConfig& cfg);

}  // namespace ckmax
