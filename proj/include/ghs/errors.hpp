#pragma once

#include <stdexcept>
#include <string>

namespace ghs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Metric not invertible at the evaluated point.
struct DegenerateMetricError : Error {
  using Error::Error;
};

// Derivative order above what the field/engine supports.
struct UnsupportedOrderError : Error {
  using Error::Error;
};

// Shooting solver did not converge; carries the last endpoint residual in the message.
struct NoGeodesicError : Error {
  using Error::Error;
};

// ODE step failure / step-count exhaustion / non-finite derivative.
struct SolverError : Error {
  using Error::Error;
};

// Bad config file, unknown family/suite id, malformed CLI value.
struct ConfigError : Error {
  using Error::Error;
};

// Input outside a family's validity domain (branch cut, signature mismatch).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace ghs
