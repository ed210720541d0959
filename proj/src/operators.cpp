#include "ckmax/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ckmax/constants.hpp"
#include "ckmax/errors.hpp"
#include "ckmax/estimates.hpp"

namespace ckmax {

Filtration::Filtration(std::size_t domain_size,
                       std::vector<std::vector<std::size_t>> chain)
    : domain_size_(domain_size), chain_(std::move(chain)) {
  if (chain_.empty()) {
    throw std::invalid_argument("Filtration: chain must contain at least one set");
  }
  masks_.reserve(chain_.size());
  std::vector<char> prev(domain_size_, 0);
  for (auto& set : chain_) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    std::vector<char> mask(domain_size_, 0);
    for (std::size_t i : set) {
      if (i >= domain_size_) {
        throw std::invalid_argument("Filtration: atom index out of range");
      }
      mask[i] = 1;
    }
    for (std::size_t i = 0; i < domain_size_; ++i) {
      if (prev[i] && !mask[i]) {
        throw std::invalid_argument("Filtration: chain is not nested");
      }
    }
    prev = mask;
    masks_.push_back(std::move(mask));
  }
}

Filtration Filtration::prefixes(std::size_t n) {
  std::vector<std::vector<std::size_t>> chain;
  chain.reserve(n);
  std::vector<std::size_t> cur;
  for (std::size_t i = 0; i < n; ++i) {
    cur.push_back(i);
    chain.push_back(cur);
  }
  return Filtration(n, std::move(chain));
}

Filtration Filtration::random_nested(std::size_t n, int length, std::mt19937_64& rng) {
  if (length < 1) throw std::invalid_argument("Filtration: length >= 1 required");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<std::size_t> cut(0, n);
  std::vector<std::size_t> cuts(static_cast<std::size_t>(length));
  for (auto& c : cuts) c = cut(rng);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::vector<std::size_t>> chain;
  chain.reserve(cuts.size());
  for (std::size_t c : cuts) {
    chain.emplace_back(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(c));
  }
  return Filtration(n, std::move(chain));
}

LatticeVector apply(const LinearOp& T, const LatticeVector& f) {
  if (f.size() != T.cols()) {
    throw DimensionMismatch("apply: vector does not live on the operator domain");
  }
  return LatticeVector(T.codomain(), T.apply_raw(f.values()));
}

template <typename Scalar>
std::vector<double> maximal_apply_raw(const DenseOp<Scalar>& T, const Filtration& A,
                                      const std::vector<Scalar>& values) {
  if (A.domain_size() != T.cols() || values.size() != T.cols()) {
    throw DimensionMismatch("maximal_apply: filtration or vector size mismatch");
  }
  std::vector<double> out(T.rows(), 0.0);
  for (std::size_t k = 0; k < A.length(); ++k) {
    std::vector<Scalar> img = T.apply_masked(values, A.mask(k));
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::max(out[i], scalar_abs(img[i]));
    }
  }
  return out;
}

LatticeVector maximal_apply(const LinearOp& T, const Filtration& A,
                            const LatticeVector& f) {
  return LatticeVector(T.codomain(), maximal_apply_raw(T, A, f.values()));
}

namespace {

void check_disjoint(const std::vector<std::vector<std::size_t>>& parts,
                    std::size_t bound, const char* what) {
  std::vector<char> seen(bound, 0);
  for (const auto& part : parts) {
    for (std::size_t i : part) {
      if (i >= bound) throw std::invalid_argument(std::string(what) + ": index out of range");
      if (seen[i]) throw std::invalid_argument(std::string(what) + ": parts overlap");
      seen[i] = 1;
    }
  }
}

}  // namespace

template <typename Scalar>
std::vector<Scalar> triangular_apply_raw(const DenseOp<Scalar>& T,
                                         const std::vector<std::vector<std::size_t>>& omega,
                                         const std::vector<std::vector<std::size_t>>& omega_tilde,
                                         const std::vector<Scalar>& values) {
  if (omega.size() != omega_tilde.size() || omega.empty()) {
    throw std::invalid_argument("triangular_apply: need equal, positive part counts");
  }
  if (values.size() != T.cols()) {
    throw DimensionMismatch("triangular_apply: vector size mismatch");
  }
  check_disjoint(omega, T.cols(), "triangular_apply domain parts");
  check_disjoint(omega_tilde, T.rows(), "triangular_apply codomain parts");

  std::vector<Scalar> out(T.rows(), Scalar(0));
  std::vector<char> prefix(T.cols(), 0);
  for (std::size_t k = 0; k < omega.size(); ++k) {
    for (std::size_t j : omega[k]) prefix[j] = 1;
    if (omega_tilde[k].empty()) continue;
    std::vector<Scalar> img = T.apply_masked(values, prefix);
    for (std::size_t i : omega_tilde[k]) out[i] = img[i];
  }
  return out;
}

LatticeVector triangular_apply(const LinearOp& T,
                               const std::vector<std::vector<std::size_t>>& omega,
                               const std::vector<std::vector<std::size_t>>& omega_tilde,
                               const LatticeVector& f) {
  return LatticeVector(T.codomain(),
                       triangular_apply_raw(T, omega, omega_tilde, f.values()));
}

template <typename Scalar>
SelectorParts selector_parts(const DenseOp<Scalar>& T, const Filtration& A,
                             const std::vector<Scalar>& values) {
  if (A.domain_size() != T.cols() || values.size() != T.cols()) {
    throw DimensionMismatch("selector_parts: size mismatch");
  }
  SelectorParts parts;
  parts.omega.resize(A.length());
  parts.omega_tilde.resize(A.length());

  // Omega_k: successive differences of the chain.
  std::vector<char> prev(T.cols(), 0);
  for (std::size_t k = 0; k < A.length(); ++k) {
    for (std::size_t j : A.set(k)) {
      if (!prev[j]) {
        parts.omega[k].push_back(j);
        prev[j] = 1;
      }
    }
  }

  // Selector: tag each codomain atom with the first chain index attaining
  // the pointwise maximum of |T(f chi_{A_k})|.
  std::vector<double> best(T.rows(), -1.0);
  std::vector<std::size_t> argmax(T.rows(), 0);
  for (std::size_t k = 0; k < A.length(); ++k) {
    std::vector<Scalar> img = T.apply_masked(values, A.mask(k));
    for (std::size_t i = 0; i < T.rows(); ++i) {
      double v = scalar_abs(img[i]);
      if (v > best[i]) {
        best[i] = v;
        argmax[i] = k;
      }
    }
  }
  for (std::size_t i = 0; i < T.rows(); ++i) {
    parts.omega_tilde[argmax[i]].push_back(i);
  }
  return parts;
}

template <typename Scalar>
DenseOp<Scalar> kothe_dual_op(const DenseOp<Scalar>& T) {
  const AtomicSpace& dom = T.domain();
  const AtomicSpace& cod = T.codomain();
  std::vector<Scalar> entries(T.cols() * T.rows());
  for (std::size_t b = 0; b < T.cols(); ++b) {
    for (std::size_t a = 0; a < T.rows(); ++a) {
      entries[b * T.rows() + a] =
          T.entry(a, b) * Scalar(cod.weight(a) / dom.weight(b));
    }
  }
  return DenseOp<Scalar>(cod, dom, std::move(entries));
}

namespace {

bool is_l1_family(const QuasiNorm& n) {
  if (const auto* lp = std::get_if<WeightedLp>(&n.family())) {
    return !lp->p.is_inf() && lp->p.value() == 1.0;
  }
  if (const auto* am = std::get_if<Amalgam>(&n.family())) {
    return !am->local.is_inf() && am->local.value() == 1.0 && !am->outer.is_inf() &&
           am->outer.value() == 1.0;
  }
  return false;
}

bool is_sup_family(const QuasiNorm& n) {
  if (const auto* lp = std::get_if<WeightedLp>(&n.family())) {
    return lp->p.is_inf();
  }
  if (const auto* am = std::get_if<Amalgam>(&n.family())) {
    return am->local.is_inf() && am->outer.is_inf();
  }
  return false;
}

template <typename Scalar>
LatticeVector modulus_vec(const AtomicSpace& sp, const std::vector<Scalar>& vals) {
  std::vector<double> m(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) m[i] = scalar_abs(vals[i]);
  return LatticeVector(sp, std::move(m));
}

template <typename Scalar>
std::vector<Scalar> params_to_values(const std::vector<double>& x, std::size_t n) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return std::vector<double>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  } else {
    std::vector<Scalar> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Scalar(x[i], x[n + i]);
    return v;
  }
}

template <typename Scalar>
std::vector<double> values_to_params(const std::vector<Scalar>& v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return v;
  } else {
    std::vector<double> x(2 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      x[i] = v[i].real();
      x[v.size() + i] = v[i].imag();
    }
    return x;
  }
}

template <typename Scalar>
constexpr std::size_t param_dims(std::size_t n) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return n;
  } else {
    return 2 * n;
  }
}

template <typename Scalar>
std::vector<Scalar> random_trial(std::size_t t, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<Scalar> v(n, Scalar(0));
  auto unit = [&]() -> Scalar {
    if constexpr (std::is_same_v<Scalar, double>) {
      return coin(rng) ? 1.0 : -1.0;
    } else {
      double ph = phase(rng);
      return Scalar(std::cos(ph), std::sin(ph));
    }
  };
  auto noise = [&]() -> Scalar {
    if constexpr (std::is_same_v<Scalar, double>) {
      return gauss(rng);
    } else {
      return Scalar(gauss(rng), gauss(rng));
    }
  };
  if (t < n) {
    v[t] = Scalar(1);  // deltas first; they attain many closed forms
    return v;
  }
  switch (t % 4) {
    case 0:
      for (auto& e : v) e = noise();
      break;
    case 1:  // indicator of a random subset
      for (auto& e : v) {
        if (coin(rng)) e = Scalar(1);
      }
      break;
    case 2:  // unimodular pattern
      for (auto& e : v) e = unit();
      break;
    default:  // sparse noise
      for (auto& e : v) {
        if (coin(rng)) e = noise();
      }
      break;
  }
  bool nonzero = false;
  for (auto& e : v) nonzero = nonzero || scalar_abs(e) != 0.0;
  if (!nonzero) v[t % n] = Scalar(1);
  return v;
}

}  // namespace

template <typename Scalar>
std::optional<double> op_norm_exact(const DenseOp<Scalar>& T, const QuasiNorm& dom_norm,
                                    const QuasiNorm& cod_norm) {
  if (dom_norm.space().size() != T.cols() || cod_norm.space().size() != T.rows()) {
    throw DimensionMismatch("op_norm_exact: norm spaces do not match the operator");
  }
  if (is_l1_family(dom_norm) && cod_norm.kappa_opt() == 1.0) {
    // The L1 unit ball is the convex hull of +-e_j/mu_j and the codomain
    // norm is convex, so columns decide.
    double best = 0.0;
    for (std::size_t j = 0; j < T.cols(); ++j) {
      std::vector<double> col(T.rows());
      for (std::size_t i = 0; i < T.rows(); ++i) col[i] = scalar_abs(T.entry(i, j));
      double v = cod_norm(LatticeVector(cod_norm.space(), std::move(col))) /
                 dom_norm.space().weight(j);
      best = std::max(best, v);
    }
    return best;
  }
  if (is_sup_family(cod_norm)) {
    // ||T|| = max over rows of the domain-dual norm of the row functional.
    double best = 0.0;
    for (std::size_t i = 0; i < T.rows(); ++i) {
      std::vector<double> g(T.cols());
      for (std::size_t j = 0; j < T.cols(); ++j) {
        g[j] = scalar_abs(T.entry(i, j)) / dom_norm.space().weight(j);
      }
      auto dv = dom_norm.exact_dual_norm_value(LatticeVector(dom_norm.space(), std::move(g)));
      if (!dv) return std::nullopt;
      best = std::max(best, *dv);
    }
    return best;
  }
  return std::nullopt;
}

template <typename Scalar>
EstimateResult op_norm_search(const DenseOp<Scalar>& T, const QuasiNorm& dom_norm,
                              const QuasiNorm& cod_norm, const SearchConfig& cfg) {
  cfg.validate();
  const std::size_t n = T.cols();
  const std::size_t dims = param_dims<Scalar>(n);

  struct RestartResult {
    double value = 0.0;
    std::vector<double> x;
    SearchStats stats;
  };
  auto body = [&](int rstart) -> RestartResult {
    auto objective = [&](const std::vector<double>& params) -> double {
      auto vals = params_to_values<Scalar>(params, n);
      double fd = dom_norm(modulus_vec(T.domain(), vals));
      if (!(fd > 0.0)) return 0.0;
      double fc = cod_norm(modulus_vec(T.codomain(), T.apply_raw(vals)));
      return fc / fd;
    };
    RestartResult rr;
    auto rng = rng_for(cfg.seed, 0xB0B + static_cast<std::uint64_t>(rstart));
    rr.x = search_start_point(dims, rstart, rng);
    if (std::all_of(rr.x.begin(), rr.x.end(), [](double v) { return v == 0.0; })) {
      rr.x.assign(dims, 1.0);
    }
    rr.stats.restarts = 1;
    rr.value = coordinate_ascent(objective, rr.x, cfg, rr.stats);
    return rr;
  };

  EstimateResult res;
  res.exact = false;
  std::vector<double> best_x;
  for (RestartResult& rr : run_restarts(cfg.restarts, cfg.workers, body)) {
    res.trials.merge(rr.stats);
    if (rr.value > res.value) {
      res.value = rr.value;
      best_x = std::move(rr.x);
    }
  }
  if (!best_x.empty()) {
    auto vals = params_to_values<Scalar>(best_x, n);
    if constexpr (std::is_same_v<Scalar, double>) {
      res.witness.emplace_back(T.domain(), vals);
    } else {
      std::vector<double> re(n), im(n);
      for (std::size_t i = 0; i < n; ++i) {
        re[i] = vals[i].real();
        im[i] = vals[i].imag();
      }
      res.witness.emplace_back(T.domain(), std::move(re));
      res.witness.emplace_back(T.domain(), std::move(im));
    }
  }
  return res;
}

template <typename Scalar>
CKReport ck_verify_impl(const DenseOp<Scalar>& T, const QuasiNorm& dom_norm,
                        const QuasiNorm& cod_norm, const Filtration& A, Index p,
                        Index q, const SearchConfig& cfg, const CKOptions& opt) {
  cfg.validate();
  if (dom_norm.space().size() != T.cols() || cod_norm.space().size() != T.rows()) {
    throw DimensionMismatch("ck_verify: norm spaces do not match the operator");
  }
  if (A.domain_size() != T.cols()) {
    throw DimensionMismatch("ck_verify: filtration lives on a different space");
  }
  if (!(p < q)) throw std::domain_error("ck_verify: requires p < q");

  CKReport rep;
  rep.tolerance = cfg.tolerance;
  rep.kappa = opt.kappa ? *opt.kappa : cod_norm.kappa();
  if (opt.ell) {
    rep.ell = *opt.ell;
  } else if (auto ell = resolve_lower_two_term(dom_norm, p)) {
    rep.ell = *ell;
  } else {
    throw std::invalid_argument(
        "ck_verify: lower two-term constant not resolvable; supply one");
  }
  if (opt.u) {
    rep.u = *opt.u;
  } else if (auto u = resolve_upper_two_term(cod_norm, q)) {
    rep.u = *u;
  } else {
    throw std::invalid_argument(
        "ck_verify: upper two-term constant not resolvable; supply one");
  }
  rep.gamma = gamma_ck(p, q, rep.kappa, rep.ell, rep.u);

  if (auto exact = op_norm_exact(T, dom_norm, cod_norm)) {
    rep.op_norm.value = *exact;
    rep.op_norm.exact = true;
  } else {
    rep.op_norm = op_norm_search(T, dom_norm, cod_norm, cfg);
  }

  const std::size_t n = T.cols();
  auto ratio = [&](const std::vector<Scalar>& vals) -> double {
    double fd = dom_norm(modulus_vec(T.domain(), vals));
    if (!(fd > 0.0)) return -1.0;
    auto mx = maximal_apply_raw(T, A, vals);
    double fc = cod_norm(LatticeVector(cod_norm.space(), std::move(mx)));
    ++rep.trial_count;
    return fc / fd;
  };

  auto rng = rng_for(cfg.seed, 0xCED5EED);
  std::vector<Scalar> worst;
  for (int t = 0; t < cfg.trials; ++t) {
    auto vals = random_trial<Scalar>(static_cast<std::size_t>(t), n, rng);
    double r = ratio(vals);
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      worst = std::move(vals);
    }
  }
  // Witness recycling: polish the worst input by ascent on the ratio.
  if (!worst.empty()) {
    auto objective = [&](const std::vector<double>& params) {
      double r = ratio(params_to_values<Scalar>(params, n));
      return r < 0.0 ? 0.0 : r;
    };
    std::vector<double> params = values_to_params(worst);
    SearchConfig polish = cfg;
    polish.iterations = std::min(cfg.iterations, 40);
    SearchStats stats;
    double r = coordinate_ascent(objective, params, polish, stats);
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
      worst = params_to_values<Scalar>(params, n);
    }
  }
  if (!worst.empty()) {
    rep.worst_witness_re.resize(n);
    if constexpr (std::is_same_v<Scalar, double>) {
      rep.worst_witness_re = worst;
    } else {
      rep.worst_witness_im.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        rep.worst_witness_re[i] = worst[i].real();
        rep.worst_witness_im[i] = worst[i].imag();
      }
    }
  }

  double bound = rep.gamma * rep.op_norm.value;
  rep.margin = bound > 0.0 ? rep.max_ratio / bound : 0.0;
  rep.verdict_available = rep.op_norm.exact;
  rep.pass = rep.max_ratio <= bound * (1.0 + rep.tolerance);
  return rep;
}

CKReport ck_verify(const LinearOp& T, const QuasiNorm& dom_norm,
                   const QuasiNorm& cod_norm, const Filtration& A, Index p, Index q,
                   const SearchConfig& cfg, const CKOptions& opt) {
  return ck_verify_impl<double>(T, dom_norm, cod_norm, A, p, q, cfg, opt);
}

DualVerifyReport dual_maximal_verify(const LinearOp& T, const QuasiNorm& dom_norm,
                                     const QuasiNorm& cod_norm, const Filtration& A_cod,
                                     Index p, Index q, const SearchConfig& cfg) {
  if (p.value() < 1.0 || !(p < q)) {
    throw std::domain_error("dual_maximal_verify: requires 1 <= p < q <= inf");
  }
  auto E_dual = dom_norm.exact_dual();
  auto F_dual = cod_norm.exact_dual();
  if (!E_dual || !F_dual) {
    throw std::invalid_argument(
        "dual_maximal_verify: both families need exact Koethe duals");
  }
  if (A_cod.domain_size() != T.rows()) {
    throw DimensionMismatch("dual_maximal_verify: filtration must live on the codomain");
  }

  LinearOp Tp = kothe_dual_op(T);
  DualVerifyReport rep;
  rep.ck = ck_verify(Tp, *F_dual, *E_dual, A_cod, q.conjugate(), p.conjugate(), cfg);

  // Pairing identity: g.(Tf) nu == f.(T'g) mu for sampled f, g.
  auto rng = rng_for(cfg.seed, 0xD0A1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < 16; ++s) {
    std::vector<double> f(T.cols()), g(T.rows());
    for (auto& v : f) v = gauss(rng);
    for (auto& v : g) v = gauss(rng);
    auto Tf = T.apply_raw(f);
    auto Tpg = Tp.apply_raw(g);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t a = 0; a < g.size(); ++a) lhs += g[a] * Tf[a] * T.codomain().weight(a);
    for (std::size_t b = 0; b < f.size(); ++b) rhs += f[b] * Tpg[b] * T.domain().weight(b);
    double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    rep.pairing_max_rel_err = std::max(rep.pairing_max_rel_err, std::abs(lhs - rhs) / scale);
  }

  if (auto pn = op_norm_exact(T, dom_norm, cod_norm)) {
    rep.primal_norm = *pn;
    rep.primal_norm_exact = true;
  } else {
    rep.primal_norm = op_norm_search(T, dom_norm, cod_norm, cfg).value;
    rep.primal_norm_exact = false;
  }
  rep.dual_norm = rep.ck.op_norm.value;
  rep.dual_norm_exact = rep.ck.op_norm.exact;
  if (rep.primal_norm_exact) {
    // An exact primal norm dominates the dual norm, exact or searched.
    rep.norm_consistency = rep.dual_norm <= rep.primal_norm * (1.0 + 1e-12);
  }
  return rep;
}

template std::vector<double> maximal_apply_raw<double>(const DenseOp<double>&,
                                                       const Filtration&,
                                                       const std::vector<double>&);
template std::vector<double> maximal_apply_raw<std::complex<double>>(
    const DenseOp<std::complex<double>>&, const Filtration&,
    const std::vector<std::complex<double>>&);
template std::vector<double> triangular_apply_raw<double>(
    const DenseOp<double>&, const std::vector<std::vector<std::size_t>>&,
    const std::vector<std::vector<std::size_t>>&, const std::vector<double>&);
template std::vector<std::complex<double>> triangular_apply_raw<std::complex<double>>(
    const DenseOp<std::complex<double>>&, const std::vector<std::vector<std::size_t>>&,
    const std::vector<std::vector<std::size_t>>&,
    const std::vector<std::complex<double>>&);
template SelectorParts selector_parts<double>(const DenseOp<double>&, const Filtration&,
                                              const std::vector<double>&);
template SelectorParts selector_parts<std::complex<double>>(
    const DenseOp<std::complex<double>>&, const Filtration&,
    const std::vector<std::complex<double>>&);
template DenseOp<double> kothe_dual_op<double>(const DenseOp<double>&);
template DenseOp<std::complex<double>> kothe_dual_op<std::complex<double>>(
    const DenseOp<std::complex<double>>&);
template std::optional<double> op_norm_exact<double>(const DenseOp<double>&,
                                                     const QuasiNorm&, const QuasiNorm&);
template std::optional<double> op_norm_exact<std::complex<double>>(
    const DenseOp<std::complex<double>>&, const QuasiNorm&, const QuasiNorm&);
template EstimateResult op_norm_search<double>(const DenseOp<double>&, const QuasiNorm&,
                                               const QuasiNorm&, const SearchConfig&);
template EstimateResult op_norm_search<std::complex<double>>(
    const DenseOp<std::complex<double>>&, const QuasiNorm&, const QuasiNorm&,
    const SearchConfig&);
template CKReport ck_verify_impl<double>(const DenseOp<double>&, const QuasiNorm&,
                                         const QuasiNorm&, const Filtration&, Index,
                                         Index, const SearchConfig&, const CKOptions&);
template CKReport ck_verify_impl<std::complex<double>>(
    const DenseOp<std::complex<double>>&, const QuasiNorm&, const QuasiNorm&,
    const Filtration&, Index, Index, const SearchConfig&, const CKOptions&);

}  // namespace ckmax
