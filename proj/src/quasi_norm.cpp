#include "ckmax/quasi_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ckmax/errors.hpp"

namespace ckmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_blocks(const Amalgam& am, std::size_t n) {
  const auto& blocks = am.blocks;
  if (blocks.empty()) {
    throw std::invalid_argument("Amalgam: block partition must be non-empty");
  }
  std::size_t expect = 0;
  for (const auto& [lo, hi] : blocks) {
    if (lo != expect || hi <= lo) {
      throw std::invalid_argument("Amalgam: blocks must be ordered, contiguous and non-empty");
    }
    expect = hi;
  }
  if (expect != n) {
    throw std::invalid_argument("Amalgam: blocks must cover every atom");
  }
}

double weighted_lp(const LatticeVector& f, Index p) {
  if (p.is_inf()) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
  }
  double pe = p.value();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double a = std::abs(f[i]);
    if (a > 0.0) s += std::pow(a, pe) * f.space().weight(i);
  }
  return std::pow(s, 1.0 / pe);
}

double lambda_norm(const LatticeVector& f, double r, const WeightFunction& wt) {
  StepFunction fs = rearrangement(f);
  double s = 0.0;
  double t = 0.0;
  double Wlo = 0.0;
  for (const StepPiece& p : fs.pieces()) {
    t += p.length;
    double Whi = wt.W(t);
    s += std::pow(p.level, r) * (Whi - Wlo);
    Wlo = Whi;
  }
  return std::pow(s, 1.0 / r);
}

double classical_lorentz_norm(const LatticeVector& f, double p, Index r) {
  StepFunction fs = rearrangement(f);
  if (r.is_inf()) {
    // sup over (0, mu(supp)) of t^{1/p} f*(t); attained at the right
    // endpoint of a piece since t^{1/p} increases.
    double m = 0.0;
    double t = 0.0;
    for (const StepPiece& pc : fs.pieces()) {
      t += pc.length;
      m = std::max(m, pc.level * std::pow(t, 1.0 / p));
    }
    return m;
  }
  double rr = r.value();
  double s = 0.0;
  double t = 0.0;
  double lo = 0.0;
  for (const StepPiece& pc : fs.pieces()) {
    t += pc.length;
    double hi = std::pow(t, rr / p);
    s += std::pow(pc.level, rr) * (hi - lo);
    lo = hi;
  }
  return std::pow(s, 1.0 / rr);
}

double amalgam_local_mass(const LatticeVector& f, std::size_t lo, std::size_t hi,
                          Index r) {
  if (r.is_inf()) {
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(f[i]));
    return m;
  }
  double re = r.value();
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    double a = std::abs(f[i]);
    if (a > 0.0) s += std::pow(a, re) * f.space().weight(i);
  }
  return std::pow(s, 1.0 / re);
}

double amalgam_norm(const LatticeVector& f, const Amalgam& am) {
  std::vector<double> blockmass;
  blockmass.reserve(am.blocks.size());
  for (const auto& [lo, hi] : am.blocks) {
    blockmass.push_back(amalgam_local_mass(f, lo, hi, am.local));
  }
  return p_sum(blockmass.data(), blockmass.size(), am.outer);
}

// Adaptive Simpson on [a,b] for a smooth integrand.
struct QuadAccum {
  double leftover_error = 0.0;
  bool converged = true;
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double eps, int depth,
                            QuadAccum& acc) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= eps || depth >= 40) {
    if (std::abs(err) > eps) {
      acc.converged = false;
      acc.leftover_error += std::abs(err);
    }
    return left + right + err;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1, acc) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1, acc);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double eps, QuadAccum& acc) {
  if (b <= a) return 0.0;
  double fa = f(a);
  double fb = f(b);
  double m = 0.5 * (a + b);
  double fm = f(m);
  double whole = simpson(fa, fm, fb, b - a);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, eps, 0, acc);
}

double gamma_norm(const LatticeVector& f, const LorentzGamma& g) {
  StepFunction fs = rearrangement(f);
  if (fs.empty()) return 0.0;
  const auto& pieces = fs.pieces();
  const WeightFunction& wt = g.weight;
  double r = g.r;

  // f** is constant (= f*(0)) on the first piece, so that part is exact.
  double t1 = pieces[0].length;
  double total = std::pow(pieces[0].level, r) * wt.W(t1);

  // Interior pieces: f**(t) = (area(t_{k-1}) + level*(t - t_{k-1})) / t.
  double tlo = t1;
  double area = pieces[0].level * t1;
  QuadAccum acc;
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    double thi = tlo + pieces[k].length;
    double a0 = area - pieces[k].level * tlo;
    double lv = pieces[k].level;
    auto integrand = [&](double t) {
      return std::pow((a0 + lv * t) / t, r) * wt.w(t);
    };
    // Split at weight breakpoints so each Simpson run sees a smooth piece.
    std::vector<double> cuts{tlo};
    for (double b : wt.breakpoints()) {
      if (b > tlo && b < thi) cuts.push_back(b);
    }
    cuts.push_back(thi);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      double rough = std::abs(integrand(0.5 * (cuts[c] + cuts[c + 1]))) *
                     (cuts[c + 1] - cuts[c]);
      double eps = g.quad_tol * std::max(rough, total * 0.01 + 1e-300);
      total += adaptive_simpson(integrand, cuts[c], cuts[c + 1], eps, acc);
    }
    area += pieces[k].level * pieces[k].length;
    tlo = thi;
  }

  // Beyond the support f**(t) = area/t; the tail closes in closed form.
  double tail = wt.tail_integral(tlo, area, r);
  if (std::isinf(tail)) return kInf;
  total += tail;

  if (!acc.converged) {
    throw QuadratureError("Gamma norm quadrature did not reach tolerance",
                          acc.leftover_error);
  }
  return std::pow(total, 1.0 / r);
}

}  // namespace

QuasiNorm::QuasiNorm(AtomicSpace space, NormFamily family)
    : space_(std::move(space)), family_(std::move(family)) {
  if (const auto* lam = std::get_if<LorentzLambda>(&family_)) {
    if (!(lam->r > 0.0) || std::isinf(lam->r)) {
      throw std::invalid_argument("LorentzLambda: r must lie in (0, inf)");
    }
  } else if (const auto* gam = std::get_if<LorentzGamma>(&family_)) {
    if (!(gam->r > 0.0) || std::isinf(gam->r)) {
      throw std::invalid_argument("LorentzGamma: r must lie in (0, inf)");
    }
    if (!(gam->quad_tol > 0.0)) {
      throw std::invalid_argument("LorentzGamma: quad_tol must be positive");
    }
  } else if (const auto* cl = std::get_if<ClassicalLorentz>(&family_)) {
    if (!(cl->p > 0.0) || std::isinf(cl->p)) {
      throw std::invalid_argument("ClassicalLorentz: p must lie in (0, inf)");
    }
  } else if (const auto* am = std::get_if<Amalgam>(&family_)) {
    validate_blocks(*am, space_.size());
  }
}

double QuasiNorm::operator()(const LatticeVector& f) const {
  if (f.size() != space_.size()) {
    throw DimensionMismatch("QuasiNorm: vector does not live on this space");
  }
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, WeightedLp>) {
          return weighted_lp(f, fam.p);
        } else if constexpr (std::is_same_v<T, LorentzLambda>) {
          return lambda_norm(f, fam.r, fam.weight);
        } else if constexpr (std::is_same_v<T, LorentzGamma>) {
          return gamma_norm(f, fam);
        } else if constexpr (std::is_same_v<T, ClassicalLorentz>) {
          return classical_lorentz_norm(f, fam.p, fam.r);
        } else {
          return amalgam_norm(f, fam);
        }
      },
      family_);
}

std::optional<double> QuasiNorm::kappa_opt() const noexcept {
  return std::visit(
      [&](const auto& fam) -> std::optional<double> {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, WeightedLp>) {
          return lp_triangle_constant(fam.p);
        } else if constexpr (std::is_same_v<T, LorentzLambda>) {
          // Banach when r >= 1 and w is nonincreasing; no tabulated
          // constant otherwise.
          if (fam.r >= 1.0 && fam.weight.nonincreasing()) return 1.0;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, LorentzGamma>) {
          // f** is subadditive, so Minkowski gives a norm for r >= 1.
          if (fam.r >= 1.0) return 1.0;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, ClassicalLorentz>) {
          // r <= p: the power weight is nonincreasing and the l^r step
          // bounds the sum. r > p (including r = inf): the dilation
          // (f+g)*(2t) <= f*(t) + g*(t) costs an extra factor 2^{1/p}.
          double base = lp_triangle_constant(fam.r);
          if (fam.r.value() <= fam.p) return base;
          return pow2(1.0 / fam.p) * base;
        } else {
          return lp_triangle_constant(fam.local) * lp_triangle_constant(fam.outer);
        }
      },
      family_);
}

double QuasiNorm::kappa() const {
  auto k = kappa_opt();
  if (!k) {
    throw UnknownKappa("no tabulated triangle constant for this norm family");
  }
  return *k;
}

std::optional<QuasiNorm> QuasiNorm::exact_dual() const {
  const auto* lp = std::get_if<WeightedLp>(&family_);
  if (!lp || lp->p.value() < 1.0) return std::nullopt;
  return QuasiNorm(space_, WeightedLp{lp->p.conjugate()});
}

std::optional<double> QuasiNorm::exact_dual_norm_value(const LatticeVector& g) const {
  const auto* lp = std::get_if<WeightedLp>(&family_);
  if (!lp) return std::nullopt;
  if (g.size() != space_.size()) {
    throw DimensionMismatch("exact_dual_norm_value: vector size mismatch");
  }
  Index p = lp->p;
  if (p.is_inf()) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += std::abs(g[i]) * space_.weight(i);
    return s;
  }
  if (p.value() == 1.0) {
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(g[i]));
    return m;
  }
  if (p.value() > 1.0) {
    return weighted_lp(g, p.conjugate());
  }
  // p < 1: the unit ball rewards concentration, so the supremum sits on a
  // single atom with f = mu_i^{-1/p} there.
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    m = std::max(m, std::abs(g[i]) * std::pow(space_.weight(i), 1.0 - 1.0 / p.value()));
  }
  return m;
}

EstimateResult kothe_dual_norm(const QuasiNorm& norm, const LatticeVector& g,
                               const SearchConfig& cfg) {
  cfg.validate();
  EstimateResult res;
  const AtomicSpace& sp = norm.space();

  if (auto exact = norm.exact_dual_norm_value(g)) {
    res.value = *exact;
    res.exact = true;
    // A realizing f, recorded so the result is reproducible like a search.
    const auto& lp = std::get<WeightedLp>(norm.family());
    std::vector<double> f(g.size(), 0.0);
    if (lp.p.is_inf()) {
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0;
    } else if (lp.p.value() > 1.0) {
      double pp = lp.p.conjugate().value();
      for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = std::pow(std::abs(g[i]), pp - 1.0);
      }
    } else {
      std::size_t best = 0;
      double bv = -1.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        double v = lp.p.value() == 1.0
                       ? std::abs(g[i])
                       : std::abs(g[i]) * std::pow(sp.weight(i), 1.0 - 1.0 / lp.p.value());
        if (v > bv) {
          bv = v;
          best = i;
        }
      }
      f[best] = 1.0;
    }
    LatticeVector fv(sp, std::move(f));
    double n = norm(fv);
    if (n > 0.0) res.witness.push_back((1.0 / n) * fv);
    return res;
  }

  auto objective = [&](const std::vector<double>& x) -> double {
    double pairing = 0.0;
    bool nonzero = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      pairing += std::abs(x[i]) * std::abs(g[i]) * sp.weight(i);
      nonzero = nonzero || x[i] != 0.0;
    }
    if (!nonzero) return 0.0;
    double n = norm(LatticeVector(sp, x));
    if (!(n > 0.0)) return 0.0;
    return pairing / n;
  };

  std::vector<double> best_x;
  for (int rstart = 0; rstart < cfg.restarts; ++rstart) {
    auto rng = rng_for(cfg.seed, static_cast<std::uint64_t>(rstart));
    std::vector<double> x = search_start_point(sp.size(), rstart, rng);
    for (double& v : x) v = std::abs(v);  // signs are irrelevant here
    SearchStats stats;
    double v = coordinate_ascent(objective, x, cfg, stats);
    stats.restarts = 1;
    res.trials.merge(stats);
    if (v > res.value) {
      res.value = v;
      best_x = x;
    }
  }
  if (!best_x.empty()) {
    LatticeVector fv(sp, best_x);
    double n = norm(fv);
    if (n > 0.0) res.witness.push_back((1.0 / n) * fv);
  }
  res.exact = false;
  return res;
}

}  // namespace ckmax
