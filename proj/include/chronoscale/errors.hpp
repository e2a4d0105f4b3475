#pragma once

#include <stdexcept>
#include <string>

namespace chronoscale {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scale construction rejected (empty input, non-finite endpoint, lo > hi).
struct InvalidScale : Error {
  using Error::Error;
};

// A queried point is not a member of the scale (no snapping is performed
// beyond the regime's point tolerance).
struct PointNotInScale : Error {
  using Error::Error;
};

struct MonotonicityViolation : Error {
  using Error::Error;
};

struct DiscontinuityDetected : Error {
  using Error::Error;
};

// Adaptive quadrature failed to converge within the depth budget.
struct QuadratureError : Error {
  using Error::Error;
};

// An operation needed dense integration or root finding that exact
// rational arithmetic cannot provide.
struct ExactRegimeError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace chronoscale
