#pragma once

#include <stdexcept>
#include <string>

namespace pumpprobe {

// Invalid run configuration (bad schema, bad parameter ranges).  CLI exit 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure during a run (non-finite values, degenerate references).
// CLI exit 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pumpprobe
