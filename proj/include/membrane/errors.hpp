#pragma once

#include <stdexcept>
#include <string>

namespace membrane {

// Invalid model construction (unstable drift, non-PSD noise, ...).
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (singular solve, non-convergent refinement, ...).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Bad run configuration (file, schema, or flag level).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Two redundant internal routes disagreed; indicates a bug, not bad input.
struct ConsistencyError : std::logic_error {
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace membrane
