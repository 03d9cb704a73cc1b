#include "benfordlab/closedform/closedform.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "benfordlab/errors.hpp"
#include "benfordlab/hiprec/precision.hpp"

namespace benford::closedform {
namespace {

using hiprec::certified_floor;
using hiprec::certified_frac;
using hiprec::certified_sign;
using hiprec::to_mpz;

constexpr unsigned kBaseBits = 128;
constexpr unsigned kMixtureBits = 256;

ExactReal log10_of(long v) { return ExactReal::log(mpq_class(v), 10); }

unsigned bits_for(std::uint64_t n) { return std::max(kBaseBits, hiprec::default_bits(n)); }

void require_irrational(const ExactReal& alpha) {
  if (alpha.as_rational()) throw RationalLog("alpha = " + alpha.to_string() + " is rational");
}

// v - floor(v) when the whole error interval of v has one floor.
std::optional<PrecReal> certain_frac(const PrecReal& v) {
  mpz_class lo = v.scaled() - v.err_ulp();
  mpz_class hi = v.scaled() + v.err_ulp();
  mpz_fdiv_q_2exp(lo.get_mpz_t(), lo.get_mpz_t(), v.bits());
  mpz_fdiv_q_2exp(hi.get_mpz_t(), hi.get_mpz_t(), v.bits());
  if (lo != hi) return std::nullopt;
  return v - PrecReal::from_integer(lo, v.bits());
}

PrecReal halve(const PrecReal& v) { return PrecReal(v.scaled(), v.bits() + 1, v.err_ulp()); }

std::optional<std::vector<UniformPiece>> build_pieces(long k, const ExactReal& alpha, const ExactReal& s,
                                                      const std::vector<ExactReal>& jumps,
                                                      unsigned bits) {
  const long m = std::labs(k);
  // Constant terms {-h alpha - s} (k > 0) or {h alpha - s} (k < 0), exact.
  std::vector<PrecReal> shifts;
  PrecReal constant = PrecReal::from_integer(0, bits + 1);
  for (long h = (k > 0 ? 0 : 1); h <= (k > 0 ? k - 1 : m); ++h) {
    const ExactReal shift = k > 0 ? -(alpha * h) - s : alpha * h - s;
    shifts.push_back(shift.realize(bits + 1));
    constant += certified_frac(shift, bits).realize(bits + 1);
  }

  std::vector<UniformPiece> pieces;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    const bool wrap = i + 1 == jumps.size();
    const ExactReal next = wrap ? jumps.front() + ExactReal(1) : jumps[i + 1];
    const ExactReal weight = next - jumps[i];
    const PrecReal mid = halve(jumps[i].realize(bits) + next.realize(bits));
    PrecReal x = -constant;
    for (const PrecReal& shift : shifts) {
      const std::optional<PrecReal> f = certain_frac(mid + shift);
      if (!f) return std::nullopt;
      x += *f;
    }
    if (k > 0) x = -x;
    PrecReal half_width = weight.realize(bits + 1);
    half_width *= to_mpz(static_cast<std::uint64_t>(m));
    half_width = halve(half_width);
    UniformPiece piece{weight, x - half_width, x + half_width};
    piece.weight_value = weight.realize(bits).to_long_double();
    piece.lo_value = piece.lo.to_long_double();
    piece.hi_value = piece.hi.to_long_double();
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

}  // namespace

std::uint64_t count_doubling_interval(long d, std::uint64_t n) {
  if (d < 1 || d > 5) throw std::invalid_argument("count_doubling_interval: d must be in 1..5");
  ExactReal x = log10_of(2) * to_mpz(n);
  if (d > 1) x += ExactReal::log(mpq_class(10, d), 10);
  return certified_floor(x, bits_for(n)).get_ui();
}

ExactReal e1_closed(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("e1_closed: N must be positive");
  return -certified_frac(log10_of(2) * to_mpz(n), bits_for(n));
}

ExactReal e4_closed(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("e4_closed: N must be positive");
  const ExactReal alpha = log10_of(2);
  const ExactReal x = alpha * to_mpz(n);
  const unsigned bits = bits_for(n + 1);
  return certified_frac(x, bits) + certified_frac(x - alpha, bits) + certified_frac(x + alpha, bits) -
         ExactReal(1);
}

void OstrowskiSpec::validate() const {
  if (k == 0) throw std::invalid_argument("Ostrowski: k must be nonzero");
  require_irrational(alpha);
  const ExactReal length = certified_frac(alpha * k, kBaseBits);
  if (certified_sign(s, kBaseBits) < 0 || certified_sign(ExactReal(1) - length - s, kBaseBits) < 0) {
    throw std::invalid_argument("Ostrowski: s must lie in [0, 1 - {k alpha}]");
  }
}

UnitInterval OstrowskiSpec::interval() const {
  validate();
  return UnitInterval(s, s + certified_frac(alpha * k, kBaseBits));
}

ExactReal ostrowski_delta(const OstrowskiSpec& spec, std::uint64_t n) {
  spec.validate();
  const ExactReal& alpha = spec.alpha;
  const ExactReal x = alpha * to_mpz(n);
  const unsigned bits = bits_for(n + static_cast<std::uint64_t>(std::labs(spec.k)));
  ExactReal sum;
  if (spec.k > 0) {
    for (long h = 0; h < spec.k; ++h) {
      sum -= certified_frac(x - alpha * h - spec.s, bits) - certified_frac(-(alpha * h) - spec.s, bits);
    }
  } else {
    for (long h = 1; h <= -spec.k; ++h) {
      sum += certified_frac(x + alpha * h - spec.s, bits) - certified_frac(alpha * h - spec.s, bits);
    }
  }
  return sum;
}

std::optional<long> kesten_bounded_numeric(const PrecReal& alpha, const UnitInterval& interval,
                                           long k_max) {
  const unsigned bits = alpha.bits();
  const PrecReal length = interval.length().realize(bits);
  mpz_class modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), 2, bits);
  for (long k = 1; k <= k_max; ++k) {
    for (long signed_k : {k, -k}) {
      mpz_class frac = alpha.scaled() * signed_k;
      mpz_fdiv_r_2exp(frac.get_mpz_t(), frac.get_mpz_t(), bits);
      mpz_class gap = abs(frac - length.scaled());
      gap = std::min(gap, mpz_class(modulus - gap));
      if (gap <= alpha.err_ulp() * k + length.err_ulp() + 1) return signed_k;
    }
  }
  return std::nullopt;
}

UniformMixture limit_mixture(long k, const ExactReal& alpha, const ExactReal& s) {
  if (k == 0) throw std::invalid_argument("limit_mixture: k must be nonzero");
  require_irrational(alpha);
  const long m = std::labs(k);

  std::vector<ExactReal> jumps;
  for (long h = (k > 0 ? 0 : 1); h <= (k > 0 ? k - 1 : m); ++h) {
    jumps.push_back(certified_frac(k > 0 ? alpha * h + s : s - alpha * h, kBaseBits));
  }
  std::sort(jumps.begin(), jumps.end(), [](const ExactReal& a, const ExactReal& b) {
    return certified_sign(a - b, kBaseBits) < 0;
  });

  unsigned bits = kMixtureBits;
  for (int round = 0; round <= hiprec::kMaxEscalations; ++round, bits *= 2) {
    if (auto pieces = build_pieces(k, alpha, s, jumps, bits)) return UniformMixture{std::move(*pieces)};
  }
  throw AmbiguityBudgetExceeded("limit_mixture: arc midpoint too close to a jump");
}

long double UniformMixture::support_lo() const {
  long double lo = pieces.front().lo_value;
  for (const UniformPiece& p : pieces) lo = std::min(lo, p.lo_value);
  return lo;
}

long double UniformMixture::support_hi() const {
  long double hi = pieces.front().hi_value;
  for (const UniformPiece& p : pieces) hi = std::max(hi, p.hi_value);
  return hi;
}

long double mixture_cdf(const UniformMixture& m, long double x) {
  long double total = 0;
  for (const UniformPiece& p : m.pieces) {
    if (x >= p.hi_value) {
      total += p.weight_value;
    } else if (x > p.lo_value) {
      total += p.weight_value * (x - p.lo_value) / (p.hi_value - p.lo_value);
    }
  }
  return std::clamp(total, 0.0L, 1.0L);
}

long double mixture_pdf(const UniformMixture& m, long double x) {
  long double total = 0;
  for (const UniformPiece& p : m.pieces) {
    if (x >= p.lo_value && x < p.hi_value) total += p.weight_value / (p.hi_value - p.lo_value);
  }
  return total;
}

}  // namespace benford::closedform
