#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "benfordlab/hiprec/exact_real.hpp"
#include "benfordlab/hiprec/interval.hpp"
#include "benfordlab/hiprec/prec_real.hpp"

namespace benford::closedform {

using hiprec::ExactReal;
using hiprec::PrecReal;
using hiprec::UnitInterval;

// S_[d,2d)(N) for {2^n} in radix 10, d in 1..5: floor(N log 2) for d = 1,
// floor(N log 2 + log(10/d)) otherwise. Floors are certified.
std::uint64_t count_doubling_interval(long d, std::uint64_t n);

// E_1(N) = -{N alpha} and E_4(N) = {N alpha} + {N alpha - alpha} + {N alpha + alpha} - 1
// for {2^n} in radix 10, alpha = log10 2. Exact reals.
ExactReal e1_closed(std::uint64_t n);
ExactReal e4_closed(std::uint64_t n);

// Hypotheses of the explicit discrepancy formula: alpha irrational, k != 0,
// s in [0, 1 - {k alpha}], so that [s, s + {k alpha}) lies in [0, 1).
struct OstrowskiSpec {
  ExactReal alpha;
  long k = 1;
  ExactReal s;

  // Throws std::invalid_argument (k = 0, s out of range) or RationalLog.
  void validate() const;
  UnitInterval interval() const;
};

// Telescoped discrepancy of [s, s + {k alpha}):
//   k > 0:  -sum_{h=0}^{k-1} ({N alpha - h alpha - s} - {-h alpha - s})
//   k < 0:   sum_{h=1}^{|k|} ({N alpha + h alpha - s} - {h alpha - s})
ExactReal ostrowski_delta(const OstrowskiSpec& spec, std::uint64_t n);

// Smallest |k| <= k_max (positive k first) with {k alpha} equal to |I| up to
// the combined error of the fixed-point values. A numeric screen only.
std::optional<long> kesten_bounded_numeric(const PrecReal& alpha, const UnitInterval& interval,
                                           long k_max);

struct UniformPiece {
  ExactReal weight;
  PrecReal lo;
  PrecReal hi;
  // Cached for CDF evaluation.
  long double weight_value = 0;
  long double lo_value = 0;
  long double hi_value = 0;
};

// Weighted mixture of uniform laws on [lo_i, hi_i].
struct UniformMixture {
  std::vector<UniformPiece> pieces;

  long double support_lo() const;
  long double support_hi() const;
};

// Limit law of the telescoped discrepancy as {N alpha} equidistributes. For
// U uniform on [0, 1) the sum is piecewise linear in U with slope -k and
// jumps at |k| points of the circle; each arc between jumps of length w
// contributes a uniform piece of weight w and width |k| w centered at the
// sum's value at the arc midpoint.
UniformMixture limit_mixture(long k, const ExactReal& alpha, const ExactReal& s);

long double mixture_cdf(const UniformMixture& m, long double x);
long double mixture_pdf(const UniformMixture& m, long double x);

}  // namespace benford::closedform
