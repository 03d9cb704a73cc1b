#pragma once

#include <stdexcept>
#include <string>

namespace benford {

// Domain errors: the inputs are well-formed but the requested quantity is not
// defined or cannot be computed. The CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// log_radix(a) is rational, so the leading digits of a^n are periodic and the
// Benford machinery does not apply.
class RationalLog : public DomainError {
 public:
  explicit RationalLog(const std::string& what) : DomainError("rational logarithm: " + what) {}
};

// A certified comparison stayed ambiguous after the maximum number of
// precision doublings.
class AmbiguityBudgetExceeded : public DomainError {
 public:
  explicit AmbiguityBudgetExceeded(const std::string& what)
      : DomainError("ambiguity budget exceeded: " + what) {}
};

class OracleTooLarge : public DomainError {
 public:
  explicit OracleTooLarge(const std::string& what) : DomainError("oracle too large: " + what) {}
};

class StrideTooCoarse : public DomainError {
 public:
  explicit StrideTooCoarse(const std::string& what) : DomainError("stride too coarse: " + what) {}
};

// Invalid arguments (bad digit, radix < 2, k = 0, ...) use std::invalid_argument;
// the CLI maps those to exit code 3.

}  // namespace benford
