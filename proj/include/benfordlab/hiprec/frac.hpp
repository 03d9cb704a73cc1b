#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "benfordlab/hiprec/prec_real.hpp"

namespace benford::hiprec {

// {n alpha} as a B-bit fixed-point fraction frac * 2^-bits. The true
// fractional part lies within err_ulp * 2^-bits of it, measured on the circle
// (a stored value just above 0 may stand for a true value just below 1).
struct FixedFrac {
  mpz_class frac;
  std::uint64_t index = 0;
  unsigned bits = 0;
  mpz_class err_ulp;

  double to_double() const;
  friend bool operator==(const FixedFrac& a, const FixedFrac& b) {
    return a.index == b.index && a.bits == b.bits && a.frac == b.frac && a.err_ulp == b.err_ulp;
  }
};

// (n * mantissa) mod 2^bits in exact integer arithmetic; err = n * alpha.err.
FixedFrac frac_at(std::uint64_t n, const PrecReal& alpha);

// Incremental {n alpha}, {(n+1) alpha}, ... by exact fixed-point addition
// mod 2^bits. Bit-identical to frac_at at every index.
//
// The accumulator is held left-aligned in 64-bit limbs (least significant
// first), so the top limb is always floor({n alpha} * 2^64) and adding limbs
// with carry is addition mod 2^bits.
class FracStream {
 public:
  FracStream(const PrecReal& alpha, std::uint64_t n_start);

  std::uint64_t index() const { return index_; }
  unsigned bits() const { return bits_; }
  FixedFrac current() const;
  void advance();

  std::uint64_t top_word() const { return acc_.back(); }
  // floor(n * m * 2^-bits) for the stored mantissa m of alpha mod 1.
  std::uint64_t whole() const { return whole_; }
  std::span<const std::uint64_t> limbs() const { return acc_; }
  std::span<const std::uint64_t> step_limbs() const { return step_; }
  // Left-alignment shift: stored limbs = fraction << shift.
  unsigned shift() const { return shift_; }

 private:
  std::vector<std::uint64_t> acc_;
  std::vector<std::uint64_t> step_;
  std::uint64_t index_ = 0;
  std::uint64_t whole_ = 0;
  unsigned bits_ = 0;
  unsigned shift_ = 0;
  mpz_class alpha_err_;
};

std::vector<FixedFrac> frac_stream(const PrecReal& alpha, std::uint64_t n_start,
                                   std::uint64_t count);

// Left-aligned limb encoding of an integer in [0, 2^bits).
std::vector<std::uint64_t> to_limbs(const mpz_class& value, unsigned bits);
mpz_class from_limbs(std::span<const std::uint64_t> limbs, unsigned bits);

}  // namespace benford::hiprec
