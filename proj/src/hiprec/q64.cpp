#include "benfordlab/hiprec/q64.hpp"

#include <cmath>
#include <stdexcept>

namespace benford::hiprec {

Q64 Q64::from_prec_real(const PrecReal& x) {
  const PrecReal r = x.with_bits(64);
  const mpz_class& s = r.scaled();
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 2, 126);
  if (abs(s) >= bound) throw std::overflow_error("Q64: value out of range");
  const bool negative = sgn(s) < 0;
  const mpz_class mag = abs(s);
  std::uint64_t words[2] = {0, 0};
  mpz_export(words, nullptr, -1, sizeof(std::uint64_t), 0, 0, mag.get_mpz_t());
  __int128 raw = static_cast<__int128>((static_cast<unsigned __int128>(words[1]) << 64) | words[0]);
  return from_raw(negative ? -raw : raw);
}

mpz_class Q64::to_mpz_scaled() const {
  const bool negative = raw_ < 0;
  const unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(raw_)
                                         : static_cast<unsigned __int128>(raw_);
  mpz_class r = to_mpz(static_cast<std::uint64_t>(mag >> 64));
  r <<= 64;
  r += to_mpz(static_cast<std::uint64_t>(mag));
  return negative ? mpz_class(-r) : r;
}

double Q64::to_double() const { return std::ldexp(static_cast<double>(raw_), -64); }

std::string Q64::to_decimal(unsigned digits) const {
  return scaled_to_decimal(to_mpz_scaled(), 64, digits);
}

namespace {

unsigned __int128 low_u128(const mpz_class& v) {
  std::uint64_t words[2] = {0, 0};
  mpz_class low;
  mpz_fdiv_r_2exp(low.get_mpz_t(), v.get_mpz_t(), 128);
  mpz_export(words, nullptr, -1, sizeof(std::uint64_t), 0, 0, low.get_mpz_t());
  return (static_cast<unsigned __int128>(words[1]) << 64) | words[0];
}

}  // namespace

Q64Multiples::Q64Multiples(const PrecReal& p, std::uint64_t n_start) {
  const mpz_class step = p.with_bits(128).scaled();
  mpz_class one;
  mpz_ui_pow_ui(one.get_mpz_t(), 2, 128);
  if (sgn(step) < 0 || step >= one) throw std::invalid_argument("Q64Multiples: p must lie in [0, 1)");
  const mpz_class start = step * to_mpz(n_start);
  mpz_class whole;
  mpz_fdiv_q_2exp(whole.get_mpz_t(), start.get_mpz_t(), 128);
  if (!mpz_fits_ulong_p(whole.get_mpz_t()) || whole >= (mpz_class(1) << 62)) {
    throw std::overflow_error("Q64Multiples: start index too large");
  }
  step_ = low_u128(step);
  frac_ = low_u128(start);
  whole_ = mpz_get_ui(whole.get_mpz_t());
}

}  // namespace benford::hiprec
