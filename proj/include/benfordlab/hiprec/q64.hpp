#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "benfordlab/hiprec/prec_real.hpp"

namespace benford::hiprec {

// Signed fixed-point value with 64 fractional bits, held exactly in 128 bits.
// Large enough for |x| < 2^63, which covers Benford errors of any practical N.
class Q64 {
 public:
  constexpr Q64() = default;
  static constexpr Q64 from_raw(__int128 raw) {
    Q64 q;
    q.raw_ = raw;
    return q;
  }
  static constexpr Q64 from_integer(std::int64_t v) { return from_raw(static_cast<__int128>(v) << 64); }
  // Rounds to nearest (ties toward +infinity).
  static Q64 from_prec_real(const PrecReal& x);

  constexpr __int128 raw() const { return raw_; }
  mpz_class to_mpz_scaled() const;
  double to_double() const;
  std::string to_decimal(unsigned digits) const;

  constexpr Q64 operator-() const { return from_raw(-raw_); }
  constexpr Q64& operator+=(Q64 rhs) {
    raw_ += rhs.raw_;
    return *this;
  }
  constexpr Q64& operator-=(Q64 rhs) {
    raw_ -= rhs.raw_;
    return *this;
  }
  friend constexpr Q64 operator+(Q64 a, Q64 b) { return a += b; }
  friend constexpr Q64 operator-(Q64 a, Q64 b) { return a -= b; }
  friend constexpr auto operator<=>(Q64 a, Q64 b) = default;

 private:
  __int128 raw_ = 0;
};

// 2^-64, the resolution of Q64.
inline constexpr Q64 kQ64Ulp = Q64::from_raw(1);

// Q64 approximations of n * p for consecutive n, with p in [0, 1). p is held
// to 128 fractional bits and accumulated exactly, so every value is within
// 2^-65 + n * 2^-128 of the true n * p.
class Q64Multiples {
 public:
  Q64Multiples(const PrecReal& p, std::uint64_t n_start);

  Q64 current() const {
    const auto top = static_cast<std::uint64_t>(frac_ >> 64);
    const auto round = static_cast<std::uint64_t>(frac_ >> 63) & 1;
    return Q64::from_raw(static_cast<__int128>((static_cast<unsigned __int128>(whole_) << 64) + top + round));
  }
  void advance() {
    const unsigned __int128 next = frac_ + step_;
    whole_ += next < frac_ ? 1 : 0;
    frac_ = next;
  }

 private:
  unsigned __int128 step_ = 0;
  unsigned __int128 frac_ = 0;
  std::uint64_t whole_ = 0;
};

}  // namespace benford::hiprec
