#ifndef AXIDIFF_ERRORS_HPP
#define AXIDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace axidiff {

/// Invalid input: out-of-range parameter, pole of a function, inapplicable method.
/// The CLI maps it to exit code 3.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument sits on a pole (Γ at a non-positive integer, K_v at integer order).
class PoleError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// A Custom initial condition grows faster than the Gaussian kernel can damp.
class GrowthError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Iteration or refinement budget exhausted, or a numerical self-check failed.
/// The CLI maps it to exit code 2.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace axidiff

#endif  // AXIDIFF_ERRORS_HPP
