#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ckmax {

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double millis = 0.0;
};

/// Runs the full verification battery. Each criterion is self-contained,
/// seeded from the base seed, and reports one pass/fail outcome. `progress`
/// (optional) receives one line per criterion as it finishes.
std::vector<CriterionOutcome> run_acceptance_suite(std::uint64_t seed,
                                                   std::ostream* progress = nullptr);

}  // namespace ckmax
