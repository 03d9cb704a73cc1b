#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "benfordlab/hiprec/exact_real.hpp"
#include "benfordlab/stats/stats.hpp"

namespace benford::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kDomainError = 2;
inline constexpr int kUsageError = 3;

// "7", "-3", "3/2" or a decimal literal "1.25", all read exactly.
mpq_class parse_rational(const std::string& text);

// Sum of terms [c*]logX, [c*]sqrtD or c with rational c, e.g. "log4",
// "sqrt2-1", "3-2*sqrt2", "1/10". Log coefficients must be integers and at
// most one radicand may appear.
struct Expression {
  mpq_class rational = 0;
  std::map<mpq_class, mpz_class, hiprec::MpqLess> logs;
  mpq_class sqrt_coeff = 0;
  std::uint64_t radicand = 0;

  hiprec::ExactReal to_exact(long radix) const;
  // (p + q sqrt D) / r; default_radicand is used when there is no sqrt term.
  stats::QuadraticIrrational to_quadratic(std::int64_t default_radicand) const;
};
Expression parse_expression(const std::string& text);

// Runs one command; args excludes the program name. Data goes to `out` (or
// --out), diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace benford::cli
