#pragma once

#include <stdexcept>
#include <string>

namespace ferrosim {

// Raised for malformed or physically inconsistent user input (bad config
// keys, invalid coefficient sets, polarity mismatches). CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an iterative solver fails to converge; the message carries the
// diagnostics (residual history, bias point, iterate). CLI exit code 3.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ferrosim
