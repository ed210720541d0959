#include "ckmax/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "ckmax/errors.hpp"

namespace ckmax {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321214581766;

void require_exponent_pair(Index p, Index q) {
  if (!(p < q)) {
    throw std::domain_error("constants: need 0 < p < q <= inf");
  }
  if (p.is_inf()) {
    throw std::domain_error("constants: p must be finite");
  }
}
}  // namespace

double tau_of(Index p, Index q) {
  require_exponent_pair(p, q);
  return 1.0 / (p.inv() - q.inv());
}

bool gamma_feasible(Index p, Index q, double kappa, double ell, double u) {
  require_exponent_pair(p, q);
  if (kappa < 1.0 || ell < 1.0 || u < 1.0) {
    throw std::domain_error("constants: kappa, ell, u must all be >= 1");
  }
  double tau = tau_of(p, q);
  // ell*u < (1 + kappa^{-tau})^{1/tau}, compared in log space.
  double a = std::exp(-tau * std::log(kappa));  // kappa^{-tau}
  return tau * std::log(ell * u) < std::log1p(a);
}

double gamma_ck(Index p, Index q, double kappa, double ell, double u) {
  if (!gamma_feasible(p, q, kappa, ell, u)) {
    throw FeasibilityViolated("gamma_ck: ell*u >= (1+kappa^{-tau})^{1/tau}");
  }
  const double pv = p.value();
  const double tau = tau_of(p, q);
  // (ell u)^p (1+kappa^{-tau})^{p/q} - 1 via expm1 so the near-boundary and
  // huge-q regimes keep full precision.
  const double a = std::exp(-tau * std::log(kappa));
  const double radicand =
      std::expm1(pv * std::log(ell * u) + pv * q.inv() * std::log1p(a));
  const double root = radicand > 0.0 ? std::pow(radicand, 1.0 / pv) : 0.0;
  if (q.is_inf()) {
    return u * kappa / (1.0 - kappa * root);
  }
  const double numer = u * std::exp(std::log1p(a) / q.value());
  const double denom = std::exp(-tau / pv * std::log(kappa)) - root;
  return numer / denom;
}

double delta_ck(Index p, Index q, double ell_full, double u_full, bool banach) {
  require_exponent_pair(p, q);
  if (ell_full < 1.0 || u_full < 1.0) {
    throw std::domain_error("delta_ck: estimate constants must be >= 1");
  }
  double gamma0;
  if (banach && q.value() >= 1.0) {
    double radicand = std::expm1(p.value() * q.inv() * kLn2);  // 2^{p/q} - 1
    gamma0 = pow2(q.inv()) / (1.0 - std::pow(radicand, 1.0 / p.value()));
  } else {
    double kappa_q = std::max(2.0, pow2(q.inv()));
    gamma0 = gamma_ck(p, q, kappa_q, 1.0, 1.0);
  }
  return gamma0 * ell_full * u_full;
}

double classical_ck(Index p, Index q) {
  require_exponent_pair(p, q);
  if (p.value() < 1.0) {
    throw std::domain_error("classical_ck: requires 1 <= p < q <= inf");
  }
  return 1.0 / (-std::expm1((q.inv() - p.inv()) * kLn2));
}

double corollary_pq_gamma(Index p, Index q) {
  require_exponent_pair(p, q);
  const double pv = p.value();
  if (q.is_inf() || q.value() >= 1.0) {
    double radicand = std::expm1(pv * q.inv() * kLn2);  // 2^{p/q} - 1
    double root = radicand > 0.0 ? std::pow(radicand, 1.0 / pv) : 0.0;
    return pow2(q.inv()) / (1.0 - root);
  }
  const double qv = q.value();
  const double e1 = (qv - 1.0) * pv / (qv - pv);
  const double base = 1.0 + pow2(e1);
  return std::pow(base, 1.0 / qv) /
         (pow2((qv - 1.0) / (qv - pv)) - std::pow(std::pow(base, pv / qv) - 1.0, 1.0 / pv));
}

ConstantsReport ConstantsReport::make(Index p, Index q, double kappa, double ell,
                                      double u) {
  ConstantsReport rep;
  rep.p = p.value();
  rep.q = q.value();
  rep.tau = tau_of(p, q);
  rep.kappa = kappa;
  rep.ell = ell;
  rep.u = u;
  rep.feasible = gamma_feasible(p, q, kappa, ell, u);
  if (rep.feasible) {
    rep.gamma = gamma_ck(p, q, kappa, ell, u);
  }
  rep.delta = delta_ck(p, q, ell, u, /*banach=*/kappa == 1.0);
  if (p.value() >= 1.0) {
    rep.classical = classical_ck(p, q);
  }
  return rep;
}

}  // namespace ckmax
