#pragma once

#include <complex>
#include <vector>

#include "ckmax/operators.hpp"
#include "ckmax/quasi_norm.hpp"
#include "ckmax/space.hpp"

namespace ckmax {

/// A complex signal over a unit-weight atomic space.
struct ComplexVector {
  AtomicSpace space;
  std::vector<std::complex<double>> values;

  ComplexVector(AtomicSpace sp, std::vector<std::complex<double>> vals);
  LatticeVector modulus() const;
  std::size_t size() const { return values.size(); }
};

/// The unnormalized n x n DFT, entries e^{-2 pi i jk / n}; its l^1 -> l^inf
/// norm is exactly 1, mirroring the continuum kernel bound.
ComplexOp dft_operator(std::size_t n);

enum class Side { Positive, Negative };

/// Signal index k stands for the centered position k - center. The positive
/// filtration is the chain of windows [0, m] in centered positions, the
/// negative one is [-m, 0]; both contain position 0.
Filtration fourier_prefix_filtration(std::size_t n, Side side, std::size_t center);

inline std::size_t default_center(std::size_t n) { return n / 2; }

/// Maximal DFT over one-sided centered prefixes.
LatticeVector maximal_fourier_prefix(const ComplexVector& f, Side side);
LatticeVector maximal_fourier_prefix(const ComplexVector& f, Side side,
                                     std::size_t center);

/// Pointwise sup over all contiguous index windows of |F(f chi_window)|,
/// via per-frequency prefix sums.
LatticeVector maximal_fourier_intervals(const ComplexVector& f);

struct MpzReport {
  bool ok = true;
  double min_slack = 0.0;     // min over outputs of 2F+* + 2F-* - F_*
  double max_violation = 0.0; // positive part of the worst gap
};

/// Checks the window decomposition bound F_* <= 2 F_+^* + 2 F_-^*
/// pointwise; every window is a union or difference of one-sided prefixes.
MpzReport mpz_check(const ComplexVector& f);
MpzReport mpz_check(const ComplexVector& f, std::size_t center);

struct AmalgamHYReport {
  std::size_t n = 0;
  double r = 1.0, s = 1.0;
  std::size_t blocks = 1;
  double p = 1.0, q = 2.0;   // max{r,s} and min{s', r'}
  CKReport ck;
  double norm_upper_bound = 0.0;  // n^{1/r' + 1/s'}, a proven bound on ||F||
  bool sanity_pass = true;        // max_ratio <= gamma * norm_upper_bound
};

/// Maximal Hausdorff-Young experiment: the DFT from the amalgam W(L^r, l^s)
/// into W(L^{s'}, l^{r'}) on blocked signals with a prefix filtration.
/// Requires 1 <= r < 2 and 1 <= s < 2 and blocks dividing n. The verdict is
/// exact only at r = s = 1; otherwise the margin against the searched norm
/// is informational and the report carries an unconditional sanity bound.
AmalgamHYReport hausdorff_young_maximal_check(std::size_t n, double r, double s,
                                              std::size_t blocks,
                                              const SearchConfig& cfg);

}  // namespace ckmax
