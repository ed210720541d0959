#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "ckmax/space.hpp"

namespace ckmax {

struct SearchConfig {
  std::uint64_t seed = 1;
  int restarts = 16;
  int iterations = 200;     // ascent sweeps per restart
  double step_init = 0.5;
  double step_decay = 0.7;
  double step_min = 1e-7;
  double tolerance = 1e-6;  // relative, for comparisons built on results
  int trials = 200;         // sample count for verification harnesses
  int workers = 1;          // restart batches may run in parallel

  void validate() const;
};

struct SearchStats {
  int restarts = 0;
  long long iterations = 0;
  long long evaluations = 0;
  int improvements = 0;

  void merge(const SearchStats& o) {
    restarts += o.restarts;
    iterations += o.iterations;
    evaluations += o.evaluations;
    improvements += o.improvements;
  }
};

/// Value of an estimate together with how it was obtained. When exact is
/// false the value is a certified lower bound: the witness reproduces it.
struct EstimateResult {
  double value = 0.0;
  bool exact = false;
  std::vector<LatticeVector> witness;  // pairwise disjointly supported
  SearchStats trials;
};

std::uint64_t split_mix64(std::uint64_t& state);

/// Deterministic per-stream generator derived from (seed, stream).
std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream);

/// Maximizes a scale-free objective by cyclic coordinate perturbation with
/// a decaying step. Returns the best value found; x is updated in place.
double coordinate_ascent(const std::function<double(const std::vector<double>&)>& objective,
                         std::vector<double>& x, const SearchConfig& cfg,
                         SearchStats& stats);

/// All set partitions of {0,...,m-1} as restricted growth strings:
/// labels[i] is the block of element i. Throws SupportTooLarge if the Bell
/// number exceeds the enumeration cap (m > 12).
void for_each_set_partition(std::size_t m,
                            const std::function<void(const std::vector<int>&)>& fn);

constexpr std::size_t kSetPartitionCap = 12;

/// Odometer over assignments {0,...,m-1} -> {0,...,n-1}. Returns false when
/// the assignment wraps around to all-zeros.
bool next_assignment(std::vector<int>& a, int n);

/// Structured starting points cycled across restarts: deltas, indicators,
/// sign patterns and Gaussian samples.
std::vector<double> search_start_point(std::size_t dim, int restart,
                                       std::mt19937_64& rng);

/// Runs body(0..restarts-1), in parallel when workers > 1. Each restart is
/// seeded independently, so the result vector does not depend on scheduling
/// and callers merge in index order.
template <typename Fn>
auto run_restarts(int restarts, int workers, Fn&& body)
    -> std::vector<decltype(body(0))> {
  using R = decltype(body(0));
  std::vector<R> out(static_cast<std::size_t>(restarts));
  if (workers <= 1 || restarts <= 1) {
    for (int r = 0; r < restarts; ++r) out[static_cast<std::size_t>(r)] = body(r);
    return out;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) {
      out[static_cast<std::size_t>(r)] = body(r);
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min(workers, restarts);
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace ckmax
