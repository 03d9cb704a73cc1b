#pragma once

// Independent reference values computed with MPFR. Nothing here shares code
// with the library's own logarithm or fixed-point routines.

#include <gmpxx.h>
#include <mpfr.h>

namespace oracle {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// round(x * 2^bits) for x = log_radix(num / den), evaluated with `extra`
// bits beyond the target.
inline mpz_class scaled_log(const mpz_class& num, const mpz_class& den, long radix, unsigned bits,
                            unsigned extra = 128) {
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits + extra);
  Mpfr a(prec), b(prec), r(prec);
  mpfr_set_z(a.get(), num.get_mpz_t(), MPFR_RNDN);
  mpfr_div_z(a.get(), a.get(), den.get_mpz_t(), MPFR_RNDN);
  mpfr_log(a.get(), a.get(), MPFR_RNDN);
  mpfr_set_si(b.get(), radix, MPFR_RNDN);
  mpfr_log(b.get(), b.get(), MPFR_RNDN);
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_mul_2ui(r.get(), r.get(), bits, MPFR_RNDN);
  mpfr_round(r.get(), r.get());
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), r.get(), MPFR_RNDN);
  return out;
}

// round({log_radix(x)} * 2^bits) for a positive integer x, by the digit-length
// route: k = number of radix digits minus one, then log_radix(x) - k.
inline mpz_class scaled_mantissa_log(const mpz_class& x, long radix, unsigned bits,
                                     unsigned extra = 128) {
  unsigned long k = mpz_sizeinbase(x.get_mpz_t(), static_cast<int>(radix)) - 1;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(radix), k);
  if (p > x) {
    mpz_divexact_ui(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(radix));
    --k;
  }
  return scaled_log(x, p, radix, bits, extra);
}

}  // namespace oracle
