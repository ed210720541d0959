#include "ckmax/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ckmax/errors.hpp"

namespace ckmax {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool has_block_with_two_atoms(const Amalgam& am) {
  for (const auto& [lo, hi] : am.blocks) {
    if (hi - lo >= 2) return true;
  }
  return false;
}

// The extremal two-function configuration behind the amalgam formula needs
// room: overlapping a block when the inner exponent governs, or two blocks
// when the outer one does. Without it the formula is only an upper bound on
// the true constant of the finite space.
bool amalgam_lower_attainable(const Amalgam& am, Index p) {
  double pv = p.value(), rv = am.local.value(), sv = am.outer.value();
  double M = std::max({pv, rv, sv});
  if (pv == M) return true;
  if (rv == M && has_block_with_two_atoms(am)) return true;
  if (sv == M && am.blocks.size() >= 2) return true;
  return false;
}

bool amalgam_upper_attainable(const Amalgam& am, Index q) {
  double qv = q.value(), rv = am.local.value(), sv = am.outer.value();
  double m = std::min({qv, rv, sv});
  if (qv == m) return true;
  if (rv == m && has_block_with_two_atoms(am)) return true;
  if (sv == m && am.blocks.size() >= 2) return true;
  return false;
}

// Lower p-estimate constant 1 certified by weight convexity: power-weight
// Lambda norms where W(t)^{p/r} is superadditive, and the classical family
// as its special case.
bool lorentz_lower_is_one(const NormFamily& fam, Index p) {
  if (p.is_inf()) return false;
  if (const auto* lam = std::get_if<LorentzLambda>(&fam)) {
    if (lam->weight.kind() != WeightFunction::Kind::Power) return false;
    double r = lam->r;
    if (r > p.value()) return false;
    return (lam->weight.power_a() + 1.0) * p.value() / r >= 1.0;
  }
  if (const auto* cl = std::get_if<ClassicalLorentz>(&fam)) {
    if (cl->r.is_inf()) return false;
    return cl->r.value() <= p.value() && p.value() >= cl->p;
  }
  return false;
}

bool lorentz_upper_is_one(const NormFamily& fam, Index q) {
  if (const auto* lam = std::get_if<LorentzLambda>(&fam)) {
    if (q.is_inf()) return false;
    if (lam->weight.kind() != WeightFunction::Kind::Power) return false;
    double s = lam->r;
    if (q.value() > s) return false;
    return (lam->weight.power_a() + 1.0) * q.value() / s <= 1.0;
  }
  if (const auto* cl = std::get_if<ClassicalLorentz>(&fam)) {
    if (cl->r.is_inf()) {
      // The weak-type norm is built on the additive distribution function,
      // which gives an upper q~ estimate with constant 1 directly.
      return !q.is_inf() && q.value() <= cl->p;
    }
    return q.value() <= cl->p && q <= cl->r;
  }
  return false;
}

}  // namespace

double amalgam_two_term_lower(Index p, Index r, Index s) {
  double M = std::max({p.value(), r.value(), s.value()});
  double invM = std::isinf(M) ? 0.0 : 1.0 / M;
  return pow2(p.inv() - invM);
}

double amalgam_two_term_upper(Index q, Index r, Index s) {
  double m = std::min({q.value(), r.value(), s.value()});
  return pow2(1.0 / m - q.inv());
}

std::optional<double> resolve_lower_two_term(const QuasiNorm& norm, Index p) {
  if (const auto* lp = std::get_if<WeightedLp>(&norm.family())) {
    if (lp->p == p) return 1.0;
    double v = std::max(1.0, pow2(p.inv() - lp->p.inv()));
    if (v == 1.0 || norm.space().size() >= 2) return v;
    return 1.0;  // a single atom admits no genuinely disjoint pair
  }
  if (const auto* am = std::get_if<Amalgam>(&norm.family())) {
    if (amalgam_lower_attainable(*am, p)) {
      return amalgam_two_term_lower(p, am->local, am->outer);
    }
    return std::nullopt;
  }
  if (lorentz_lower_is_one(norm.family(), p)) return 1.0;
  return std::nullopt;
}

std::optional<double> resolve_upper_two_term(const QuasiNorm& norm, Index q) {
  if (const auto* lp = std::get_if<WeightedLp>(&norm.family())) {
    if (lp->p == q) return 1.0;
    double v = std::max(1.0, pow2(lp->p.inv() - q.inv()));
    if (v == 1.0 || norm.space().size() >= 2) return v;
    return 1.0;
  }
  if (const auto* am = std::get_if<Amalgam>(&norm.family())) {
    if (amalgam_upper_attainable(*am, q)) {
      return amalgam_two_term_upper(q, am->local, am->outer);
    }
    return std::nullopt;
  }
  if (lorentz_upper_is_one(norm.family(), q)) return 1.0;
  return std::nullopt;
}

namespace {

// Shared engine for the lower/upper estimate searches: alternate between
// picking the best ordered partition for the current f (exhaustive when
// n^m is small, sampled otherwise) and coordinate ascent on f.
EstimateResult estimate_search(const QuasiNorm& norm, Index idx, int n,
                               const SearchConfig& cfg, bool lower) {
  const AtomicSpace& sp = norm.space();
  const std::size_t m = sp.size();
  EstimateResult res;
  res.exact = false;

  struct RestartResult {
    double value = -1.0;
    std::vector<double> x;
    std::vector<int> labels;
    SearchStats stats;
  };
  auto body = [&](int rstart) -> RestartResult {
    // Scratch buffers live inside the body so parallel restarts do not share.
    std::vector<double> lpart(m, 0.0);
    std::vector<double> lnorms(static_cast<std::size_t>(n), 0.0);
    auto lratio = [&](const std::vector<double>& x, const std::vector<int>& labels) {
      double whole = norm(LatticeVector(sp, x));
      if (!(whole > 0.0) || !std::isfinite(whole)) return 0.0;
      for (int j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) lpart[i] = labels[i] == j ? x[i] : 0.0;
        lnorms[static_cast<std::size_t>(j)] = norm(LatticeVector(sp, lpart));
      }
      double psum = p_sum(lnorms.data(), lnorms.size(), idx);
      if (lower) return psum / whole;
      return psum > 0.0 ? whole / psum : 0.0;
    };
    auto lbest_labels = [&](const std::vector<double>& x, std::mt19937_64& rng,
                            SearchStats& stats) -> std::pair<std::vector<int>, double> {
      std::vector<int> labels(m, 0);
      std::vector<int> best(m, 0);
      double bv = lratio(x, labels);
      ++stats.evaluations;
      double combos = std::pow(static_cast<double>(n), static_cast<double>(m));
      if (combos <= 2e5) {
        while (next_assignment(labels, n)) {
          double v = lratio(x, labels);
          ++stats.evaluations;
          if (v > bv) {
            bv = v;
            best = labels;
          }
        }
      } else {
        std::uniform_int_distribution<int> dist(0, n - 1);
        for (int s = 0; s < 4096; ++s) {
          for (auto& l : labels) l = dist(rng);
          double v = lratio(x, labels);
          ++stats.evaluations;
          if (v > bv) {
            bv = v;
            best = labels;
          }
        }
      }
      return {best, bv};
    };

    RestartResult rr;
    auto rng = rng_for(cfg.seed, static_cast<std::uint64_t>(rstart));
    std::vector<double> x = search_start_point(m, rstart, rng);
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
      x.assign(m, 1.0);
    }
    rr.stats.restarts = 1;
    std::vector<int> labels(m, 0);
    double val = 0.0;
    for (int round = 0; round < 3; ++round) {
      auto [lb, lv] = lbest_labels(x, rng, rr.stats);
      labels = lb;
      val = lv;
      auto obj = [&](const std::vector<double>& y) { return lratio(y, labels); };
      val = std::max(val, coordinate_ascent(obj, x, cfg, rr.stats));
    }
    auto [lb, lv] = lbest_labels(x, rng, rr.stats);
    if (lv > val) {
      val = lv;
      labels = lb;
    }
    rr.value = val;
    rr.x = std::move(x);
    rr.labels = std::move(labels);
    return rr;
  };

  double global_best = -1.0;
  std::vector<double> gx;
  std::vector<int> glabels;
  for (RestartResult& rr : run_restarts(cfg.restarts, cfg.workers, body)) {
    res.trials.merge(rr.stats);
    if (rr.value > global_best) {
      global_best = rr.value;
      gx = std::move(rr.x);
      glabels = std::move(rr.labels);
    }
  }

  res.value = std::max(global_best, 0.0);
  if (!gx.empty()) {
    for (int j = 0; j < n; ++j) {
      std::vector<double> pv(m, 0.0);
      bool nonzero = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (glabels[i] == j && gx[i] != 0.0) {
          pv[i] = gx[i];
          nonzero = true;
        }
      }
      if (nonzero) res.witness.emplace_back(sp, std::move(pv));
    }
  }
  return res;
}

EstimateResult exact_result(double value) {
  EstimateResult r;
  r.value = value;
  r.exact = true;
  return r;
}

}  // namespace

EstimateResult lower_estimate_const(const QuasiNorm& norm, Index p, int n,
                                    const SearchConfig& cfg) {
  cfg.validate();
  if (n < 2) throw std::invalid_argument("lower_estimate_const: n >= 2 required");
  if (const auto* lp = std::get_if<WeightedLp>(&norm.family()); lp && lp->p == p) {
    return exact_result(1.0);
  }
  if (const auto* am = std::get_if<Amalgam>(&norm.family()); am && n == 2) {
    if (amalgam_lower_attainable(*am, p)) {
      return exact_result(amalgam_two_term_lower(p, am->local, am->outer));
    }
  }
  return estimate_search(norm, p, n, cfg, /*lower=*/true);
}

EstimateResult upper_estimate_const(const QuasiNorm& norm, Index q, int n,
                                    const SearchConfig& cfg) {
  cfg.validate();
  if (n < 2) throw std::invalid_argument("upper_estimate_const: n >= 2 required");
  if (const auto* lp = std::get_if<WeightedLp>(&norm.family()); lp && lp->p == q) {
    return exact_result(1.0);
  }
  if (const auto* am = std::get_if<Amalgam>(&norm.family()); am && n == 2) {
    if (amalgam_upper_attainable(*am, q)) {
      return exact_result(amalgam_two_term_upper(q, am->local, am->outer));
    }
  }
  return estimate_search(norm, q, n, cfg, /*lower=*/false);
}

namespace {

// Exhaustive renorm core: folds p_sum over every set partition of supp(f).
// maximize=true gives the lower-p renorm, false the upper-q renorm.
double renorm_enumerate(const QuasiNorm& norm, Index idx, const LatticeVector& f,
                        bool maximize, std::vector<int>* best_labels_out) {
  const auto supp = f.support();
  if (supp.empty()) return 0.0;
  const std::size_t m = supp.size();
  const std::size_t space_n = f.size();
  double best = maximize ? -kInf : kInf;
  std::vector<double> part(space_n, 0.0);
  std::vector<double> part_norms;
  for_each_set_partition(m, [&](const std::vector<int>& labels) {
    int nblocks = 1 + *std::max_element(labels.begin(), labels.end());
    part_norms.assign(static_cast<std::size_t>(nblocks), 0.0);
    for (int j = 0; j < nblocks; ++j) {
      std::fill(part.begin(), part.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        if (labels[i] == j) part[supp[i]] = f[supp[i]];
      }
      part_norms[static_cast<std::size_t>(j)] = norm(LatticeVector(f.space(), part));
    }
    double v = p_sum(part_norms.data(), part_norms.size(), idx);
    if (maximize ? v > best : v < best) {
      best = v;
      if (best_labels_out) *best_labels_out = labels;
    }
  });
  return best;
}

EstimateResult renorm_estimate(const QuasiNorm& norm, Index idx, const LatticeVector& f,
                               const SearchConfig& cfg, bool maximize) {
  cfg.validate();
  EstimateResult res;
  const auto supp = f.support();
  if (supp.empty()) {
    res.exact = true;
    return res;
  }
  if (supp.size() <= kSetPartitionCap) {
    std::vector<int> labels;
    res.value = renorm_enumerate(norm, idx, f, maximize, &labels);
    res.exact = true;
    int nblocks = 1 + *std::max_element(labels.begin(), labels.end());
    for (int j = 0; j < nblocks; ++j) {
      std::vector<std::size_t> atoms;
      for (std::size_t i = 0; i < supp.size(); ++i) {
        if (labels[i] == j) atoms.push_back(supp[i]);
      }
      res.witness.push_back(f.restricted(atoms));
    }
    return res;
  }
  // Sampled fallback: seeded random partitions only, flagged inexact.
  auto rng = rng_for(cfg.seed, 0x5eed);
  const std::size_t m = supp.size();
  double best = maximize ? -kInf : kInf;
  std::vector<int> labels(m, 0), best_labels(m, 0);
  std::vector<double> part(f.size(), 0.0);
  std::vector<double> part_norms;
  long long samples = static_cast<long long>(cfg.restarts) * cfg.iterations;
  for (long long s = 0; s < samples; ++s) {
    std::uniform_int_distribution<int> width(1, static_cast<int>(std::min<std::size_t>(m, 8)));
    int k = width(rng);
    std::uniform_int_distribution<int> lab(0, k - 1);
    for (auto& l : labels) l = lab(rng);
    if (s == 0) std::fill(labels.begin(), labels.end(), 0);
    int nblocks = 1 + *std::max_element(labels.begin(), labels.end());
    part_norms.assign(static_cast<std::size_t>(nblocks), 0.0);
    for (int j = 0; j < nblocks; ++j) {
      std::fill(part.begin(), part.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        if (labels[i] == j) part[supp[i]] = f[supp[i]];
      }
      part_norms[static_cast<std::size_t>(j)] = norm(LatticeVector(f.space(), part));
    }
    double v = p_sum(part_norms.data(), part_norms.size(), idx);
    ++res.trials.evaluations;
    if (maximize ? v > best : v < best) {
      best = v;
      best_labels = labels;
    }
  }
  res.value = best;
  res.exact = false;
  int nblocks = 1 + *std::max_element(best_labels.begin(), best_labels.end());
  for (int j = 0; j < nblocks; ++j) {
    std::vector<std::size_t> atoms;
    for (std::size_t i = 0; i < m; ++i) {
      if (best_labels[i] == j) atoms.push_back(supp[i]);
    }
    if (!atoms.empty()) res.witness.push_back(f.restricted(atoms));
  }
  return res;
}

}  // namespace

double renorm_lower_p(const QuasiNorm& norm, Index p, const LatticeVector& f) {
  if (f.size() != norm.space().size()) {
    throw DimensionMismatch("renorm_lower_p: vector size mismatch");
  }
  if (f.support().size() > kSetPartitionCap) {
    throw SupportTooLarge("renorm_lower_p: support exceeds the enumeration cap");
  }
  if (f.is_zero()) return 0.0;
  return renorm_enumerate(norm, p, f, /*maximize=*/true, nullptr);
}

double renorm_upper_q(const QuasiNorm& norm, Index q, const LatticeVector& f) {
  if (f.size() != norm.space().size()) {
    throw DimensionMismatch("renorm_upper_q: vector size mismatch");
  }
  if (f.support().size() > kSetPartitionCap) {
    throw SupportTooLarge("renorm_upper_q: support exceeds the enumeration cap");
  }
  if (f.is_zero()) return 0.0;
  return renorm_enumerate(norm, q, f, /*maximize=*/false, nullptr);
}

EstimateResult renorm_lower_p_estimate(const QuasiNorm& norm, Index p,
                                       const LatticeVector& f, const SearchConfig& cfg) {
  return renorm_estimate(norm, p, f, cfg, /*maximize=*/true);
}

EstimateResult renorm_upper_q_estimate(const QuasiNorm& norm, Index q,
                                       const LatticeVector& f, const SearchConfig& cfg) {
  return renorm_estimate(norm, q, f, cfg, /*maximize=*/false);
}

EstimateResult renorm_upper_q_dual_route(const QuasiNorm& F, Index q,
                                         const LatticeVector& g, const SearchConfig& cfg) {
  cfg.validate();
  if (q.value() < 1.0) {
    throw std::domain_error("renorm_upper_q_dual_route: requires q >= 1");
  }
  auto E = F.exact_dual();
  if (!E) {
    throw std::invalid_argument("renorm_upper_q_dual_route: family has no exact Koethe dual");
  }
  if (F.space().size() > kSetPartitionCap) {
    throw SupportTooLarge("renorm_upper_q_dual_route: space exceeds the enumeration cap");
  }
  Index p = q.conjugate();
  const AtomicSpace& sp = F.space();

  auto objective = [&](const std::vector<double>& x) -> double {
    double pairing = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      pairing += std::abs(x[i]) * std::abs(g[i]) * sp.weight(i);
    }
    if (pairing == 0.0) return 0.0;
    LatticeVector fx(sp, x);
    if (fx.is_zero()) return 0.0;
    double denom = renorm_enumerate(*E, p, fx, /*maximize=*/true, nullptr);
    return denom > 0.0 ? pairing / denom : 0.0;
  };

  EstimateResult res;
  std::vector<double> best_x;
  for (int rstart = 0; rstart < cfg.restarts; ++rstart) {
    auto rng = rng_for(cfg.seed, static_cast<std::uint64_t>(rstart) + 17);
    std::vector<double> x = search_start_point(sp.size(), rstart, rng);
    for (double& v : x) v = std::abs(v);
    SearchStats stats;
    stats.restarts = 1;
    double v = coordinate_ascent(objective, x, cfg, stats);
    res.trials.merge(stats);
    if (v > res.value) {
      res.value = v;
      best_x = x;
    }
  }
  if (!best_x.empty()) res.witness.emplace_back(sp, best_x);
  res.exact = false;
  return res;
}

DualityReport duality_check(const QuasiNorm& E, Index p, int n, const SearchConfig& cfg) {
  if (!E.is_norm()) {
    throw std::invalid_argument("duality_check: rejected for quasi-norm families (kappa > 1)");
  }
  if (p.value() < 1.0) {
    throw std::domain_error("duality_check: requires p in [1, inf]");
  }
  auto Ed = E.exact_dual();
  if (!Ed) {
    throw std::invalid_argument("duality_check: family has no exact Koethe dual");
  }
  Index pc = p.conjugate();
  DualityReport rep;
  rep.p = p.value();
  rep.p_conj = pc.value();
  rep.ell = lower_estimate_const(E, p, n, cfg);
  rep.dual_upper = upper_estimate_const(*Ed, pc, n, cfg);
  rep.upper = upper_estimate_const(E, p, n, cfg);
  rep.dual_ell = lower_estimate_const(*Ed, pc, n, cfg);
  auto rel_gap = [](double a, double b) {
    double m = std::max(std::abs(a), std::abs(b));
    return m > 0.0 ? std::abs(a - b) / m : 0.0;
  };
  rep.gap = rel_gap(rep.ell.value, rep.dual_upper.value);
  rep.mirror_gap = rel_gap(rep.upper.value, rep.dual_ell.value);
  return rep;
}

GridCheckResult weight_superadditivity_check(const WeightFunction& W, double p,
                                             double r, const std::vector<double>& grid) {
  if (!(r > 0.0) || p < r) {
    throw std::domain_error("weight_superadditivity_check: requires p >= r > 0");
  }
  const double e = p / r;
  GridCheckResult res;
  std::vector<double> We(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) We[i] = std::pow(W.W(grid[i]), e);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      double lhs = std::pow(W.W(grid[i] + grid[j]), e);
      double rhs = We[i] + We[j];
      if (lhs < rhs * (1.0 - 1e-12)) {
        res.ok = false;
        res.violation = GridViolation{grid[i], grid[j], lhs, rhs};
        return res;
      }
    }
  }
  return res;
}

GridCheckResult weight_subadditivity_check(const WeightFunction& V, double q,
                                           double s, const std::vector<double>& grid) {
  if (!(s > 0.0) || !(q > 0.0) || q > s) {
    throw std::domain_error("weight_subadditivity_check: requires s >= q > 0");
  }
  const double e = q / s;
  GridCheckResult res;
  std::vector<double> Ve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) Ve[i] = std::pow(V.W(grid[i]), e);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      double lhs = std::pow(V.W(grid[i] + grid[j]), e);
      double rhs = Ve[i] + Ve[j];
      if (lhs > rhs * (1.0 + 1e-12)) {
        res.ok = false;
        res.violation = GridViolation{grid[i], grid[j], lhs, rhs};
        return res;
      }
    }
  }
  return res;
}

double fourier_weight_condition(const WeightFunction& V, const WeightFunction& W,
                                double r, double s, const std::vector<double>& grid) {
  if (!(r > 0.0) || !(s > 0.0)) {
    throw std::domain_error("fourier_weight_condition: r, s must be positive");
  }
  double sup = 0.0;
  for (double z : grid) {
    if (!(z > 0.0)) throw std::domain_error("fourier_weight_condition: grid must be positive");
    double Wz = W.W(z);
    if (Wz == 0.0) {
      throw std::domain_error("fourier_weight_condition: W vanishes on the grid");
    }
    double v = z * std::pow(V.W(1.0 / z), 1.0 / r) * std::pow(Wz, -1.0 / s);
    sup = std::max(sup, v);
  }
  return sup;
}

std::vector<double> default_check_grid() {
  std::vector<double> grid;
  const int per_decade = 64;
  const double lo = -6.0, hi = 6.0;
  const int n = static_cast<int>((hi - lo) * per_decade);
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    grid.push_back(std::pow(10.0, lo + (hi - lo) * i / n));
  }
  return grid;
}

}  // namespace ckmax
