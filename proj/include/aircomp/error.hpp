#pragma once

#include <stdexcept>
#include <string>

namespace aircomp {

// Bad user-supplied configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure at run time: degenerate optimum, quadrature that does not
// settle, all Monte Carlo trials rejected (CLI exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sum-gain sample was not positive, so a sample-based policy has no value
// for this trial.
class RejectedSample : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace aircomp
