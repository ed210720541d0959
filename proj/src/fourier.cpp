#include "ckmax/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ckmax/constants.hpp"
#include "ckmax/errors.hpp"

namespace ckmax {

ComplexVector::ComplexVector(AtomicSpace sp, std::vector<std::complex<double>> vals)
    : space(std::move(sp)), values(std::move(vals)) {
  if (values.size() != space.size()) {
    throw DimensionMismatch("ComplexVector: value count does not match atom count");
  }
}

LatticeVector ComplexVector::modulus() const {
  std::vector<double> m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m[i] = std::abs(values[i]);
  return LatticeVector(space, std::move(m));
}

ComplexOp dft_operator(std::size_t n) {
  if (n == 0) throw std::invalid_argument("dft_operator: n >= 1 required");
  AtomicSpace sp = AtomicSpace::uniform(n);
  std::vector<std::complex<double>> a(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double angle = -2.0 * std::numbers::pi *
                     static_cast<double>((j * k) % n) / static_cast<double>(n);
      a[j * n + k] = std::polar(1.0, angle);
    }
  }
  return ComplexOp(sp, sp, std::move(a));
}

Filtration fourier_prefix_filtration(std::size_t n, Side side, std::size_t center) {
  if (center >= n) throw std::invalid_argument("fourier_prefix_filtration: center out of range");
  std::vector<std::vector<std::size_t>> chain;
  if (side == Side::Positive) {
    for (std::size_t hi = center; hi < n; ++hi) {
      std::vector<std::size_t> set;
      for (std::size_t k = center; k <= hi; ++k) set.push_back(k);
      chain.push_back(std::move(set));
    }
  } else {
    for (std::size_t m = 0; m <= center; ++m) {
      std::vector<std::size_t> set;
      for (std::size_t k = center - m; k <= center; ++k) set.push_back(k);
      chain.push_back(std::move(set));
    }
  }
  return Filtration(n, std::move(chain));
}

LatticeVector maximal_fourier_prefix(const ComplexVector& f, Side side) {
  return maximal_fourier_prefix(f, side, default_center(f.size()));
}

LatticeVector maximal_fourier_prefix(const ComplexVector& f, Side side,
                                     std::size_t center) {
  ComplexOp F = dft_operator(f.size());
  Filtration A = fourier_prefix_filtration(f.size(), side, center);
  return LatticeVector(f.space, maximal_apply_raw(F, A, f.values));
}

LatticeVector maximal_fourier_intervals(const ComplexVector& f) {
  const std::size_t n = f.size();
  ComplexOp F = dft_operator(n);
  std::vector<double> out(n, 0.0);
  std::vector<std::complex<double>> prefix(n + 1);
  for (std::size_t x = 0; x < n; ++x) {
    prefix[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      prefix[k + 1] = prefix[k] + F.entry(x, k) * f.values[k];
    }
    double best = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        best = std::max(best, std::abs(prefix[b + 1] - prefix[a]));
      }
    }
    out[x] = best;
  }
  return LatticeVector(f.space, std::move(out));
}

MpzReport mpz_check(const ComplexVector& f) {
  return mpz_check(f, default_center(f.size()));
}

MpzReport mpz_check(const ComplexVector& f, std::size_t center) {
  LatticeVector lhs = maximal_fourier_intervals(f);
  LatticeVector fp = maximal_fourier_prefix(f, Side::Positive, center);
  LatticeVector fm = maximal_fourier_prefix(f, Side::Negative, center);
  MpzReport rep;
  double scale = 0.0;
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    double bound = 2.0 * fp[i] + 2.0 * fm[i];
    rep.min_slack = std::min(rep.min_slack, bound - lhs[i]);
    scale = std::max({scale, bound, lhs[i]});
  }
  if (rep.min_slack < -1e-12 * std::max(scale, 1.0)) {
    rep.ok = false;
    rep.max_violation = -rep.min_slack;
  }
  return rep;
}

AmalgamHYReport hausdorff_young_maximal_check(std::size_t n, double r, double s,
                                              std::size_t blocks,
                                              const SearchConfig& cfg) {
  if (!(r >= 1.0 && r < 2.0) || !(s >= 1.0 && s < 2.0)) {
    throw std::domain_error(
        "hausdorff_young_maximal_check: needs 1 <= r < 2 and 1 <= s < 2 so that "
        "max{r,s} < min{s',r'}");
  }
  if (blocks == 0 || n % blocks != 0) {
    throw std::domain_error("hausdorff_young_maximal_check: blocks must divide n");
  }

  AmalgamHYReport rep;
  rep.n = n;
  rep.r = r;
  rep.s = s;
  rep.blocks = blocks;

  const std::size_t bsize = n / blocks;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ranges.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    ranges.emplace_back(b * bsize, (b + 1) * bsize);
  }
  AtomicSpace sp = AtomicSpace::uniform(n);
  double rc = Index(r).conjugate().value();
  double sc = Index(s).conjugate().value();
  QuasiNorm dom(sp, Amalgam{Index(r), Index(s), ranges});
  QuasiNorm cod(sp, Amalgam{Index(sc), Index(rc), ranges});

  rep.p = std::max(r, s);
  rep.q = std::min(sc, rc);

  ComplexOp F = dft_operator(n);
  Filtration A = Filtration::prefixes(n);
  rep.ck = ck_verify_impl(F, dom, cod, A, Index(rep.p), Index(rep.q), cfg);

  // ||F|| <= n^{1/r' + 1/s'}: the kernel bound through l^1 -> l^inf
  // composed with the Hoelder embeddings of the two amalgams.
  rep.norm_upper_bound = std::pow(static_cast<double>(n), 1.0 / rc + 1.0 / sc);
  rep.sanity_pass =
      rep.ck.max_ratio <= rep.ck.gamma * rep.norm_upper_bound * (1.0 + cfg.tolerance);
  return rep;
}

}  // namespace ckmax
