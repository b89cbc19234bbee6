#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mgraal {

// Input outside the domain of a distance-generating function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Array lengths that do not match the fixed problem dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid solver / experiment configuration, or a precondition on
// scalar parameters (step sizes, schedules, tolerances) not met.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A (geometry, regularizer) pair without a closed-form Bregman prox.
class UnsupportedPairing : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed external input (LIBSVM files, edge lists).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);

  // 1-based; 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

void check_dimension(std::size_t expected, std::size_t got, const char* what);

}  // namespace mgraal
