#pragma once

#include <stdexcept>
#include <string>

namespace flowforms {

// Bad caller-supplied values: dimensions, indices, malformed data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Violated run parameters: CFL bound, aliasing bound, tau <= 1, ...
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trajectory endpoints too far apart to close into a cycle.
class NotACycleError : public InputError {
 public:
  using InputError::InputError;
};

// Unwrapped displacement too far from the integer lattice to round safely.
class AmbiguityError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace flowforms
