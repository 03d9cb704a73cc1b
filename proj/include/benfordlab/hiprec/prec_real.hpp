#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace benford::hiprec {

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "GMP ui functions must take 64 bits");

inline mpz_class to_mpz(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

// Fixed-point real with an explicit error bound.
//
// The stored value is scaled() * 2^-bits(); the true value lies within
// err_ulp() * 2^-bits() of it. scaled() is signed, so negative constants
// such as log10(1/2) are representable; int_part() and frac_mantissa() give
// the floor / fractional-bits split used by the fractional-part machinery.
class PrecReal {
 public:
  PrecReal() = default;
  PrecReal(mpz_class scaled, unsigned bits, mpz_class err_ulp);

  static PrecReal from_integer(const mpz_class& value, unsigned bits);
  // floor(q * 2^bits); err_ulp is 0 when q is dyadic at this precision, else 1.
  static PrecReal from_rational(const mpq_class& q, unsigned bits);

  const mpz_class& scaled() const { return scaled_; }
  unsigned bits() const { return bits_; }
  const mpz_class& err_ulp() const { return err_ulp_; }

  // floor of the stored value.
  mpz_class int_part() const;
  // stored value mod 1, as an integer in [0, 2^bits).
  mpz_class frac_mantissa() const;

  // +1 / -1 when the whole error interval lies on one side of zero, 0 when
  // the interval touches zero.
  int certain_sign() const;

  // Round to nearest at a coarser precision (or shift up to a finer one).
  PrecReal with_bits(unsigned bits) const;

  double to_double() const;
  long double to_long_double() const;
  // Decimal rendering rounded to `digits` fractional digits (half away from
  // zero). Locale-independent.
  std::string to_decimal(unsigned digits) const;

  PrecReal operator-() const;
  PrecReal& operator+=(const PrecReal& rhs);
  PrecReal& operator-=(const PrecReal& rhs);
  PrecReal& operator*=(const mpz_class& k);

  friend PrecReal operator+(PrecReal lhs, const PrecReal& rhs) { return lhs += rhs; }
  friend PrecReal operator-(PrecReal lhs, const PrecReal& rhs) { return lhs -= rhs; }
  friend PrecReal operator*(PrecReal lhs, const mpz_class& k) { return lhs *= k; }

 private:
  void align_to(unsigned bits);

  mpz_class scaled_ = 0;
  unsigned bits_ = 0;
  mpz_class err_ulp_ = 0;
};

// Renders an exact scaled / 2^bits value; shared by PrecReal and Q64.
std::string scaled_to_decimal(const mpz_class& scaled, unsigned bits, unsigned digits);

}  // namespace benford::hiprec
