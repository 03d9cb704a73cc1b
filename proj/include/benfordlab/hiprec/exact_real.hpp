#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "benfordlab/hiprec/factor.hpp"
#include "benfordlab/hiprec/prec_real.hpp"

namespace benford::hiprec {

// Maximum number of precision doublings before a certified comparison gives
// up with AmbiguityBudgetExceeded.
inline constexpr int kMaxEscalations = 8;

struct MpqLess {
  bool operator()(const mpq_class& a, const mpq_class& b) const { return cmp(a, b) < 0; }
};

// An exactly known real of the form
//
//     q + sum_i c_i * log_radix(r_i) + e * sqrt(D)
//
// with rational q, e, r_i > 0, integer c_i, one radix and one nonsquare D per
// value. This covers every constant the Benford machinery needs: n*log_b(a),
// interval endpoints log_b(d), their integer combinations, rational interval
// ends and quadratic irrationals.
//
// realize() evaluates at any precision with a rigorous bound; as_rational()
// decides exactly whether the value is rational (logs of rationals are either
// rational or transcendental), which is what lets certified comparisons
// terminate on exact ties such as {2 log10 2} = log10 4.
class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(long v) : rational_(v) {}  // NOLINT(google-explicit-constructor)
  static ExactReal rational(const mpq_class& q);
  // log_radix(arg); arg > 0, radix >= 2.
  static ExactReal log(const mpq_class& arg, long radix);
  // coeff * sqrt(radicand); radicand must not be a perfect square.
  static ExactReal sqrt(const mpq_class& coeff, std::uint64_t radicand);

  ExactReal operator-() const;
  ExactReal& operator+=(const ExactReal& rhs);
  ExactReal& operator-=(const ExactReal& rhs);
  ExactReal& operator*=(const mpz_class& k);
  friend ExactReal operator+(ExactReal a, const ExactReal& b) { return a += b; }
  friend ExactReal operator-(ExactReal a, const ExactReal& b) { return a -= b; }
  friend ExactReal operator*(ExactReal a, const mpz_class& k) { return a *= k; }
  friend ExactReal operator*(const mpz_class& k, ExactReal a) { return a *= k; }

  PrecReal realize(unsigned bits) const;
  // The exact value when it is rational, nullopt when irrational.
  std::optional<mpq_class> as_rational() const;

  const mpq_class& rational_part() const { return rational_; }
  bool has_logs() const { return !logs_.empty(); }
  long radix() const { return radix_; }
  // Bit length of the largest irrational-term coefficient.
  unsigned coefficient_bits() const;
  // Human-readable form, e.g. "3 + 2*log10(2) - log10(4)".
  std::string to_string() const;

 private:
  void check_compatible(const ExactReal& rhs) const;

  mpq_class rational_ = 0;
  long radix_ = 0;
  std::map<mpq_class, mpz_class, MpqLess> logs_;  // argument -> coefficient
  mpq_class sqrt_coeff_ = 0;
  std::uint64_t radicand_ = 0;
};

// Certified sign of x: realizes at start_bits, doubling precision while the
// error interval straddles zero; exact zeros are detected via as_rational().
int certified_sign(const ExactReal& x, unsigned start_bits);
// Certified floor and fractional part.
mpz_class certified_floor(const ExactReal& x, unsigned start_bits);
ExactReal certified_frac(const ExactReal& x, unsigned start_bits);

}  // namespace benford::hiprec
