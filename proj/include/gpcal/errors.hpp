#pragma once

#include <stdexcept>
#include <string>

namespace gpcal {

// Process exit codes used by the command line tool. Library errors map onto
// them through the exception taxonomy below.
enum class ExitCode : int { ok = 0, config = 2, numerical = 3, io = 4 };

// Invalid configuration or invalid caller-supplied values (exit 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A computation failed: singular matrix, non-finite result, no convergence
// where convergence is contractual (exit 3).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// File system or parse failure (exit 4).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gpcal
