#pragma once

#include <stdexcept>

namespace mtgg {

// Invalid experiment configuration or a violated operation precondition
// that originates from user input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure inside an iterative routine (bracket expansion hit its
// doubling limit, non-finite intermediate values, ...).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mtgg
