#pragma once

#include <optional>

#include "ckmax/index.hpp"

namespace ckmax {

/// tau with 1/tau = 1/p - 1/q; equals p when q = inf.
double tau_of(Index p, Index q);

/// Whether ell*u < (1 + kappa^{-tau})^{1/tau}, the strict condition under
/// which the Christ-Kiselev bound gamma is finite.
bool gamma_feasible(Index p, Index q, double kappa, double ell, double u);

/// The Christ-Kiselev constant
///   gamma = u (1+kappa^{-tau})^{1/q} /
///           (kappa^{-tau/p} - (ell^p u^p (1+kappa^{-tau})^{p/q} - 1)^{1/p}),
/// with the limiting form u*kappa / (1 - kappa*((ell u)^p - 1)^{1/p}) at
/// q = inf. Throws FeasibilityViolated outside the feasible region.
double gamma_ck(Index p, Index q, double kappa, double ell, double u);

/// gamma_0 * ell * u where gamma_0 is gamma_ck at unit two-term constants
/// and kappa_q = max{2, 2^{1/q}}; the Banach branch (q >= 1) uses
/// 2^{1/q} / (1 - (2^{p/q}-1)^{1/p}) instead.
double delta_ck(Index p, Index q, double ell_full, double u_full, bool banach);

/// The classical constant (1 - 2^{1/q-1/p})^{-1}, for 1 <= p < q <= inf.
double classical_ck(Index p, Index q);

/// The Lebesgue-space constant: 2^{1/q}/(1-(2^{p/q}-1)^{1/p}) for q >= 1,
/// and the kappa = 2^{1/q-1} evaluation written out for q < 1.
double corollary_pq_gamma(Index p, Index q);

struct ConstantsReport {
  double p = 0.0, q = 0.0;        // inf encoded as IEEE infinity
  double tau = 0.0;
  double kappa = 1.0;
  double ell = 1.0;
  double u = 1.0;
  bool feasible = false;
  std::optional<double> gamma;     // present iff feasible
  std::optional<double> delta;
  std::optional<double> classical; // present iff p >= 1

  static ConstantsReport make(Index p, Index q, double kappa, double ell, double u);
};

}  // namespace ckmax
