#pragma once

#include <optional>
#include <vector>

#include "ckmax/index.hpp"
#include "ckmax/quasi_norm.hpp"
#include "ckmax/search.hpp"

namespace ckmax {

/// Best constant in the two-term lower p-estimate for an amalgam of
/// Lebesgue spaces: 2^{1/p - 1/max{p,r,s}} (1/inf = 0).
double amalgam_two_term_lower(Index p, Index r, Index s);

/// Two-term upper q-estimate constant: 2^{1/min{q,r,s} - 1/q}.
double amalgam_two_term_upper(Index q, Index r, Index s);

/// Closed-form two-term constants used by the verification harness:
/// matching weighted L^p, the amalgam formulas when the extremal
/// configuration fits the block structure, and the Lorentz families whose
/// weight convexity/concavity forces constant 1.
std::optional<double> resolve_lower_two_term(const QuasiNorm& norm, Index p);
std::optional<double> resolve_upper_two_term(const QuasiNorm& norm, Index q);

/// Least C with (sum_j ||f chi_{A_j}||^p)^{1/p} <= C ||f|| over n disjoint
/// pieces. Exact 1 for the matching weighted L^p family and the exact
/// amalgam value at n = 2; otherwise a certified lower bound found by
/// enumerating ordered partitions and ascending on f.
EstimateResult lower_estimate_const(const QuasiNorm& norm, Index p, int n,
                                    const SearchConfig& cfg);

/// Dual direction: least C with ||sum f_j|| <= C (sum ||f_j||^q)^{1/q}.
EstimateResult upper_estimate_const(const QuasiNorm& norm, Index q, int n,
                                    const SearchConfig& cfg);

/// ||f|| in the lower-p renorming: sup over set partitions of supp(f) of
/// (sum_j ||f chi_{H_j}||^p)^{1/p}, by exhaustive enumeration. Throws
/// SupportTooLarge beyond the 12-atom cap.
double renorm_lower_p(const QuasiNorm& norm, Index p, const LatticeVector& f);

/// ||f|| in the upper-q renorming: inf over set partitions of supp(f) of
/// (sum_j ||f chi_{H_j}||^q)^{1/q}, exhaustive as above.
double renorm_upper_q(const QuasiNorm& norm, Index q, const LatticeVector& f);

/// Enumeration when the support fits the cap (exact), seeded random
/// partitions beyond it (certified bound only).
EstimateResult renorm_lower_p_estimate(const QuasiNorm& norm, Index p,
                                       const LatticeVector& f, const SearchConfig& cfg);
EstimateResult renorm_upper_q_estimate(const QuasiNorm& norm, Index q,
                                       const LatticeVector& f, const SearchConfig& cfg);

/// The dual construction of the upper-q renorm: ||g|| as the pairing
/// supremum against the lower-q' renorm of the Koethe dual space. Lower
/// bound by search; agrees with renorm_upper_q on normed families.
EstimateResult renorm_upper_q_dual_route(const QuasiNorm& F, Index q,
                                         const LatticeVector& g, const SearchConfig& cfg);

struct DualityReport {
  double p = 1.0, p_conj = 1.0;
  EstimateResult ell;              // lower p-estimate of E
  EstimateResult dual_upper;       // upper p'-estimate of E'
  double gap = 0.0;                // relative
  EstimateResult upper;            // upper p-estimate of E
  EstimateResult dual_ell;         // lower p'-estimate of E'
  double mirror_gap = 0.0;
};

/// Checks the duality identities l_{(p),n}(E) = u^{(p'),n}(E') and
/// u^{(p),n}(E) = l_{(p'),n}(E') by running both searches. E must be a
/// normed family with an exact dual.
DualityReport duality_check(const QuasiNorm& E, Index p, int n, const SearchConfig& cfg);

struct GridViolation {
  double t1 = 0.0, t2 = 0.0;
  double lhs = 0.0, rhs = 0.0;
};

struct GridCheckResult {
  bool ok = true;
  std::optional<GridViolation> violation;  // first violating pair
};

/// Superadditivity W(t1+t2)^{p/r} >= W(t1)^{p/r} + W(t2)^{p/r} over all
/// grid pairs; the hypothesis that yields a lower p-estimate with
/// constant 1 in Lambda_{r,w}. Requires p >= r > 0.
GridCheckResult weight_superadditivity_check(const WeightFunction& W, double p,
                                             double r, const std::vector<double>& grid);

/// Mirror check V(t1+t2)^{q/s} <= V(t1)^{q/s} + V(t2)^{q/s}.
GridCheckResult weight_subadditivity_check(const WeightFunction& V, double q,
                                           double s, const std::vector<double>& grid);

/// Grid supremum of z V(1/z)^{1/r} W(z)^{-1/s}; a finite-sample diagnostic
/// for the Fourier weight condition, not a finiteness proof.
double fourier_weight_condition(const WeightFunction& V, const WeightFunction& W,
                                double r, double s, const std::vector<double>& grid);

/// 64 logarithmically spaced points per decade over [1e-6, 1e6].
std::vector<double> default_check_grid();

}  // namespace ckmax
