#pragma once

#include <stdexcept>
#include <string>

namespace modalfit {

// Invalid configuration or contract violation in user-supplied parameters.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: not-SPD reduced mass matrix, insufficient retained modes,
// degenerate reconstruction, spurious spectrum.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace modalfit
