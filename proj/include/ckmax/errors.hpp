#pragma once

#include <stdexcept>
#include <string>

namespace ckmax {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a norm family has no tabulated triangle constant.
struct UnknownKappa : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by gamma_ck when ell*u >= (1 + kappa^{-tau})^{1/tau}.
struct FeasibilityViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an exhaustive set-partition enumeration would exceed the cap.
struct SupportTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& msg, double achieved_error)
      : std::runtime_error(msg), achieved(achieved_error) {}
  double achieved;
};

}  // namespace ckmax
