#pragma once

#include <gmpxx.h>

#include "benfordlab/hiprec/prec_real.hpp"

namespace benford::hiprec {

// Natural logarithm of a positive integer at `bits` fractional bits, computed
// from atanh series with guard bits. err_ulp <= 2.
PrecReal ln_integer(const mpz_class& n, unsigned bits);

// log_radix(a) for a positive rational a. When the logarithm is rational the
// result is exact up to the final floor (err 0 for dyadic values, else 1);
// otherwise err_ulp <= 2. Deterministic for fixed (a, radix, bits).
// Throws std::invalid_argument for a <= 0, radix < 2 or bits < 64.
PrecReal log_radix(const mpq_class& a, long radix, unsigned bits);

// Same value as log_radix, memoized per (a, radix, bits). Thread-safe.
PrecReal log_radix_cached(const mpq_class& a, long radix, unsigned bits);

// True iff log_radix(a) is rational, decided from prime factorizations.
bool is_log_rational(const mpq_class& a, long radix);

}  // namespace benford::hiprec
