#pragma once

#include <stdexcept>
#include <string>

namespace zetagram {

inline constexpr const char* kEngineVersion = "zetagram 0.1.0";

// Bad run configuration or an admissibility violation in paper mode.
// The CLI maps this (and std::domain_error / std::invalid_argument) to exit 2.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An iteration failed to converge or a computed certificate was violated.
// Never silently absorbed; the CLI maps this to exit 3.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exploration-mode admissibility complaints go to stderr instead of throwing.
void log_warning(const std::string& msg);

}  // namespace zetagram
