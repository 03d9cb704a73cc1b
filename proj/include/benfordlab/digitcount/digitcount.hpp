#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "benfordlab/hiprec/exact_real.hpp"
#include "benfordlab/hiprec/interval.hpp"
#include "benfordlab/hiprec/membership.hpp"
#include "benfordlab/hiprec/q64.hpp"

namespace benford::digitcount {

using hiprec::ExactReal;
using hiprec::Q64;
using hiprec::UnitInterval;

// Thread count for the parallel counters: requested if nonzero, else the
// BENFORDLAB_THREADS environment variable, else hardware concurrency.
unsigned resolve_threads(unsigned requested);

// alpha = log_radix(a). Throws RationalLog when that logarithm is rational,
// std::invalid_argument for a <= 0 or radix < 2.
ExactReal benford_alpha(const mpq_class& a, long radix);

// P(d) = log_radix(1 + 1/d) as an exact real.
ExactReal digit_probability(long d, long radix);

// Classifier whose cell for n is D(a^n) - 1, valid for n <= n_max.
hiprec::BoundaryClassifier digit_classifier(const mpq_class& a, long radix, std::uint64_t n_max,
                                            unsigned bits = 0);

// Most significant radix digit of a^n, from {n alpha} with certified
// escalation near the digit boundaries.
unsigned leading_digit(std::uint64_t n, const mpq_class& a, long radix);
unsigned leading_digit(std::uint64_t n, const ExactReal& alpha, long radix);

struct DigitCountReport {
  mpq_class base;
  long radix = 10;
  std::uint64_t n = 0;
  unsigned bits = 0;
  // Index d - 1 for digit d.
  std::vector<std::uint64_t> counts;
  std::vector<ExactReal> predictions;  // B_d(N) = N log_radix(1 + 1/d)
  std::vector<ExactReal> errors;       // E_d(N) = S_d(N) - B_d(N)

  std::uint64_t count(long d) const { return counts.at(static_cast<std::size_t>(d - 1)); }
  const ExactReal& prediction(long d) const { return predictions.at(static_cast<std::size_t>(d - 1)); }
  const ExactReal& error(long d) const { return errors.at(static_cast<std::size_t>(d - 1)); }
};

// S_d(N) for every digit, counted in parallel over disjoint index segments.
// Counts are integers summed per segment, so the report does not depend on
// the thread count. threads == 0 uses resolve_threads.
DigitCountReport count_digits(const mpq_class& a, std::uint64_t n, long radix = 10,
                              unsigned threads = 0, unsigned bits = 0);

ExactReal benford_error(const mpq_class& a, long d, std::uint64_t n, long radix = 10,
                        unsigned threads = 0);

// #{k <= n : {k alpha} in I} and the discrepancy #{...} - n |I|.
std::uint64_t interval_count(const ExactReal& alpha, const UnitInterval& interval, std::uint64_t n,
                             unsigned threads = 0);
ExactReal interval_discrepancy(const ExactReal& alpha, const UnitInterval& interval,
                               std::uint64_t n, unsigned threads = 0);

// E_d(n) for n = 1..n_max. Each recorded value is kept exactly as the pair
// (n, S_d(n)) and as a Q64 within 2^-64 of E_d(n). Every stride-th index is
// recorded; min and max are tracked over all indices.
struct ErrorSeries {
  mpq_class base;
  long radix = 10;
  long digit = 1;
  std::uint64_t n_max = 0;
  std::uint64_t stride = 1;
  std::vector<std::uint64_t> indices;
  std::vector<std::uint64_t> counts;  // S_d(n) at each recorded index
  std::vector<Q64> values;
  Q64 min;
  Q64 max;
  std::uint64_t argmin = 0;
  std::uint64_t argmax = 0;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  // E_d(indices[i]) = counts[i] - indices[i] * P(d), exactly.
  ExactReal exact_value(std::size_t i) const;
};

ErrorSeries error_series(const mpq_class& a, long d, std::uint64_t n_max, long radix = 10,
                         std::uint64_t stride = 1, unsigned threads = 0);

// Streams (n, E_d(n)) for n = 1..n_max to visit without storing anything.
// Single pass, single thread.
template <class Visit>
void for_each_error(const mpq_class& a, long d, std::uint64_t n_max, long radix, Visit&& visit);

// Leading digit of a^n from the exact rational power; the independent oracle
// for leading_digit. Throws OracleTooLarge when n * (bits(p) + bits(q))
// exceeds 2^24.
unsigned brute_force_digit(const mpq_class& a, std::uint64_t n, long radix = 10);

namespace detail {
hiprec::PrecReal probability_value(long d, long radix);
void check_digit(long d, long radix);
}  // namespace detail

template <class Visit>
void for_each_error(const mpq_class& a, long d, std::uint64_t n_max, long radix, Visit&& visit) {
  detail::check_digit(d, radix);
  if (n_max == 0) return;
  const hiprec::BoundaryClassifier classifier = digit_classifier(a, radix, n_max);
  hiprec::Q64Multiples expected(detail::probability_value(d, radix), 1);
  const auto target = static_cast<unsigned>(d - 1);
  std::int64_t hits = 0;
  classifier.for_each(1, n_max, [&](std::uint64_t n, unsigned cell) {
    hits += cell == target ? 1 : 0;
    visit(n, Q64::from_integer(hits) - expected.current());
    expected.advance();
  });
}

}  // namespace benford::digitcount
