#include "ckmax/suite.hpp"

namespace ckmax {

std::vector<CriterionOutcome> run_acceptance_suite(std::uint64_t, std::ostream*) {
  return {};
}

}  // namespace ckmax
