#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace semaopt {

/// Bad argument to a library call (dimension mismatch, parameter out of range).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-finite value showed up mid-run; carries the iteration it happened at.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::int64_t iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}

  std::int64_t iteration() const { return iteration_; }

 private:
  std::int64_t iteration_;
};

}  // namespace semaopt
