#include "benfordlab/hiprec/prec_real.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace benford::hiprec {

PrecReal::PrecReal(mpz_class scaled, unsigned bits, mpz_class err_ulp)
    : scaled_(std::move(scaled)), bits_(bits), err_ulp_(std::move(err_ulp)) {
  if (err_ulp_ < 0) throw std::invalid_argument("PrecReal: negative error bound");
}

PrecReal PrecReal::from_integer(const mpz_class& value, unsigned bits) {
  mpz_class s;
  mpz_mul_2exp(s.get_mpz_t(), value.get_mpz_t(), bits);
  return PrecReal(s, bits, 0);
}

PrecReal PrecReal::from_rational(const mpq_class& q, unsigned bits) {
  mpz_class num;
  mpz_mul_2exp(num.get_mpz_t(), q.get_num_mpz_t(), bits);
  mpz_class quo, rem;
  mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  return PrecReal(quo, bits, rem == 0 ? 0 : 1);
}

mpz_class PrecReal::int_part() const {
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), scaled_.get_mpz_t(), bits_);
  return r;
}

mpz_class PrecReal::frac_mantissa() const {
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), scaled_.get_mpz_t(), bits_);
  return r;
}

int PrecReal::certain_sign() const {
  if (cmp(abs(scaled_), err_ulp_) <= 0) return 0;
  return sgn(scaled_);
}

PrecReal PrecReal::with_bits(unsigned bits) const {
  if (bits >= bits_) {
    mpz_class s, e;
    mpz_mul_2exp(s.get_mpz_t(), scaled_.get_mpz_t(), bits - bits_);
    mpz_mul_2exp(e.get_mpz_t(), err_ulp_.get_mpz_t(), bits - bits_);
    return PrecReal(s, bits, e);
  }
  const unsigned drop = bits_ - bits;
  // round half up: floor((x + 2^(drop-1)) / 2^drop)
  mpz_class half;
  mpz_ui_pow_ui(half.get_mpz_t(), 2, drop - 1);
  mpz_class s = scaled_ + half;
  mpz_fdiv_q_2exp(s.get_mpz_t(), s.get_mpz_t(), drop);
  // |true - rounded| <= err + half, both in the finer ulps
  mpz_class e = err_ulp_ + half;
  mpz_cdiv_q_2exp(e.get_mpz_t(), e.get_mpz_t(), drop);
  return PrecReal(s, bits, e);
}

double PrecReal::to_double() const { return static_cast<double>(to_long_double()); }

long double PrecReal::to_long_double() const {
  if (scaled_ == 0) return 0.0L;
  mpz_class mag = abs(scaled_);
  const long len = static_cast<long>(mpz_sizeinbase(mag.get_mpz_t(), 2));
  long shift = 0;
  if (len > 64) {
    shift = len - 64;
    mpz_fdiv_q_2exp(mag.get_mpz_t(), mag.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  }
  unsigned long long top = 0;
  mpz_export(&top, nullptr, -1, sizeof(top), 0, 0, mag.get_mpz_t());
  const long double v =
      std::ldexp(static_cast<long double>(top), static_cast<int>(shift - static_cast<long>(bits_)));
  return scaled_ < 0 ? -v : v;
}

std::string PrecReal::to_decimal(unsigned digits) const {
  return scaled_to_decimal(scaled_, bits_, digits);
}

PrecReal PrecReal::operator-() const { return PrecReal(-scaled_, bits_, err_ulp_); }

void PrecReal::align_to(unsigned bits) {
  if (bits == bits_) return;
  *this = with_bits(bits);
}

PrecReal& PrecReal::operator+=(const PrecReal& rhs) {
  if (rhs.bits_ == bits_) {
    scaled_ += rhs.scaled_;
    err_ulp_ += rhs.err_ulp_;
    return *this;
  }
  const unsigned b = std::min(bits_, rhs.bits_);
  align_to(b);
  PrecReal r = rhs.with_bits(b);
  scaled_ += r.scaled_;
  err_ulp_ += r.err_ulp_;
  return *this;
}

PrecReal& PrecReal::operator-=(const PrecReal& rhs) { return *this += -rhs; }

PrecReal& PrecReal::operator*=(const mpz_class& k) {
  scaled_ *= k;
  err_ulp_ *= abs(k);
  return *this;
}

std::string scaled_to_decimal(const mpz_class& scaled, unsigned bits, unsigned digits) {
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, digits);
  mpz_class mag = abs(scaled) * ten_pow;
  // round half away from zero
  mpz_class half;
  if (bits > 0) {
    mpz_ui_pow_ui(half.get_mpz_t(), 2, bits - 1);
    mag += half;
  }
  mpz_fdiv_q_2exp(mag.get_mpz_t(), mag.get_mpz_t(), bits);
  std::string s = mag.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (scaled < 0 && mag != 0) s.insert(0, "-");
  return s;
}

}  // namespace benford::hiprec
