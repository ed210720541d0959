#include "ckmax/search.hpp"

#include <cmath>
#include <stdexcept>

#include "ckmax/errors.hpp"

namespace ckmax {

void SearchConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("SearchConfig: restarts >= 1 required");
  if (iterations < 1) throw std::invalid_argument("SearchConfig: iterations >= 1 required");
  if (!(tolerance > 0.0)) throw std::invalid_argument("SearchConfig: tolerance must be positive");
  if (!(step_init > 0.0) || !(step_decay > 0.0) || step_decay >= 1.0) {
    throw std::invalid_argument("SearchConfig: bad step schedule");
  }
}

std::uint64_t split_mix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0xA5A5A5A5A5A5A5A5ull + stream * 0x9E3779B97F4A7C15ull);
  return std::mt19937_64(split_mix64(s));
}

double coordinate_ascent(const std::function<double(const std::vector<double>&)>& objective,
                         std::vector<double>& x, const SearchConfig& cfg,
                         SearchStats& stats) {
  double best = objective(x);
  ++stats.evaluations;
  double step = cfg.step_init;
  std::vector<double> trial = x;
  for (int sweep = 0; sweep < cfg.iterations && step > cfg.step_min; ++sweep) {
    ++stats.iterations;
    bool improved = false;
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double deltas[4] = {step * scale, -step * scale, x[i] * step, -x[i] * step};
      for (double d : deltas) {
        if (d == 0.0) continue;
        trial[i] = x[i] + d;
        double v = objective(trial);
        ++stats.evaluations;
        if (v > best * (1.0 + 1e-14) && std::isfinite(v)) {
          best = v;
          x[i] = trial[i];
          improved = true;
          ++stats.improvements;
        } else {
          trial[i] = x[i];
        }
      }
    }
    if (!improved) step *= cfg.step_decay;
  }
  return best;
}

namespace {
void set_partitions_rec(std::size_t m, std::vector<int>& labels, std::size_t pos,
                        int max_used,
                        const std::function<void(const std::vector<int>&)>& fn) {
  if (pos == m) {
    fn(labels);
    return;
  }
  for (int b = 0; b <= max_used + 1; ++b) {
    labels[pos] = b;
    set_partitions_rec(m, labels, pos + 1, std::max(max_used, b), fn);
  }
}
}  // namespace

void for_each_set_partition(std::size_t m,
                            const std::function<void(const std::vector<int>&)>& fn) {
  if (m > kSetPartitionCap) {
    throw SupportTooLarge("set partition enumeration capped at " +
                          std::to_string(kSetPartitionCap) + " elements, got " +
                          std::to_string(m));
  }
  if (m == 0) {
    std::vector<int> empty;
    fn(empty);
    return;
  }
  std::vector<int> labels(m, 0);
  set_partitions_rec(m, labels, 1, 0, fn);
}

bool next_assignment(std::vector<int>& a, int n) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (++a[i] < n) return true;
    a[i] = 0;
  }
  return false;
}

std::vector<double> search_start_point(std::size_t dim, int restart,
                                       std::mt19937_64& rng) {
  std::vector<double> x(dim, 0.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  switch (restart % 5) {
    case 0:  // single delta
      x[static_cast<std::size_t>(restart / 5) % dim] = 1.0;
      break;
    case 1:  // all ones
      for (double& v : x) v = 1.0;
      break;
    case 2:  // a pair of atoms
      x[static_cast<std::size_t>(restart) % dim] = 1.0;
      x[static_cast<std::size_t>(restart + 1 + restart / 5) % dim] = 1.0;
      break;
    case 3:  // random signs
      for (double& v : x) v = coin(rng) ? 1.0 : -1.0;
      break;
    default:  // Gaussian
      for (double& v : x) v = gauss(rng);
      break;
  }
  return x;
}

}  // namespace ckmax
