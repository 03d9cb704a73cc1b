#include "benfordlab/digitcount/digitcount.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "benfordlab/errors.hpp"
#include "benfordlab/hiprec/log.hpp"
#include "benfordlab/hiprec/precision.hpp"

namespace benford::digitcount {
namespace {

// Below this many indices per thread the spawn cost dominates.
constexpr std::uint64_t kMinSegment = 1 << 16;

struct Segment {
  std::uint64_t start;
  std::uint64_t count;
};

std::vector<Segment> split(std::uint64_t n, unsigned threads) {
  const std::uint64_t parts = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, n / kMinSegment));
  std::vector<Segment> out;
  std::uint64_t start = 1;
  for (std::uint64_t i = 0; i < parts; ++i) {
    const std::uint64_t count = n / parts + (i < n % parts ? 1 : 0);
    out.push_back({start, count});
    start += count;
  }
  return out;
}

// Runs fn(i, segment) for each segment, one thread per segment beyond the
// first, and rethrows the first failure.
template <class Fn>
void run_segments(const std::vector<Segment>& segments, Fn&& fn) {
  if (segments.size() == 1) {
    fn(std::size_t{0}, segments[0]);
    return;
  }
  std::vector<std::exception_ptr> failures(segments.size());
  std::vector<std::thread> workers;
  for (std::size_t i = 1; i < segments.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        fn(i, segments[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    });
  }
  try {
    fn(std::size_t{0}, segments[0]);
  } catch (...) {
    failures[0] = std::current_exception();
  }
  for (std::thread& t : workers) t.join();
  for (const std::exception_ptr& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

std::vector<std::uint64_t> count_cells_parallel(const hiprec::BoundaryClassifier& classifier,
                                                std::uint64_t n, unsigned threads) {
  const std::vector<Segment> segments = split(n, resolve_threads(threads));
  std::vector<std::vector<std::uint64_t>> partial(segments.size(),
                                                  std::vector<std::uint64_t>(classifier.cell_count(), 0));
  run_segments(segments, [&](std::size_t i, Segment s) {
    classifier.count_cells(s.start, s.count, partial[i]);
  });
  std::vector<std::uint64_t> total(classifier.cell_count(), 0);
  for (const auto& p : partial) {
    for (std::size_t c = 0; c < total.size(); ++c) total[c] += p[c];
  }
  return total;
}

std::vector<ExactReal> digit_boundaries(long radix) {
  std::vector<ExactReal> out;
  for (long d = 2; d < radix; ++d) out.push_back(ExactReal::log(mpq_class(d), radix));
  return out;
}

bool is_zero(const ExactReal& x) { return x.as_rational() == std::optional<mpq_class>(mpq_class(0)); }
bool is_one(const ExactReal& x) { return x.as_rational() == std::optional<mpq_class>(mpq_class(1)); }

}  // namespace

namespace detail {

void check_digit(long d, long radix) {
  if (radix < 2) throw std::invalid_argument("radix must be >= 2");
  if (d < 1 || d >= radix) {
    throw std::invalid_argument("digit " + std::to_string(d) + " outside 1.." + std::to_string(radix - 1));
  }
}

hiprec::PrecReal probability_value(long d, long radix) {
  return digit_probability(d, radix).realize(192);
}

}  // namespace detail

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("BENFORDLAB_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 4096) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExactReal benford_alpha(const mpq_class& a, long radix) {
  if (a <= 0) throw std::invalid_argument("base must be positive");
  if (radix < 2) throw std::invalid_argument("radix must be >= 2");
  if (hiprec::is_log_rational(a, radix)) {
    throw RationalLog("log_" + std::to_string(radix) + "(" + a.get_str() + ") is rational");
  }
  return ExactReal::log(a, radix);
}

ExactReal digit_probability(long d, long radix) {
  detail::check_digit(d, radix);
  return ExactReal::log(mpq_class(d + 1, d), radix);
}

hiprec::BoundaryClassifier digit_classifier(const mpq_class& a, long radix, std::uint64_t n_max,
                                            unsigned bits) {
  return hiprec::BoundaryClassifier(benford_alpha(a, radix), digit_boundaries(radix), n_max, bits);
}

unsigned leading_digit(std::uint64_t n, const mpq_class& a, long radix) {
  return leading_digit(n, benford_alpha(a, radix), radix);
}

unsigned leading_digit(std::uint64_t n, const ExactReal& alpha, long radix) {
  if (n == 0) throw std::invalid_argument("leading_digit: n must be positive");
  if (radix < 2) throw std::invalid_argument("radix must be >= 2");
  const hiprec::FixedFrac x = hiprec::frac_at(n, alpha.realize(hiprec::default_bits(n)));
  // Largest d with log_radix d <= {n alpha}, by bisection on [0, log d).
  long lo = 1;
  long hi = radix - 1;
  while (lo < hi) {
    const long mid = lo + (hi - lo + 1) / 2;
    const UnitInterval below(ExactReal(0), ExactReal::log(mpq_class(mid), radix));
    if (hiprec::resolve_membership(x, below, alpha) == hiprec::Membership::Outside) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return static_cast<unsigned>(lo);
}

DigitCountReport count_digits(const mpq_class& a, std::uint64_t n, long radix, unsigned threads,
                              unsigned bits) {
  if (n == 0) throw std::invalid_argument("N must be positive");
  const hiprec::BoundaryClassifier classifier = digit_classifier(a, radix, n, bits);
  DigitCountReport report;
  report.base = a;
  report.radix = radix;
  report.n = n;
  report.bits = classifier.bits();
  report.counts = count_cells_parallel(classifier, n, threads);
  const mpz_class big_n = hiprec::to_mpz(n);
  for (long d = 1; d < radix; ++d) {
    ExactReal b = digit_probability(d, radix) * big_n;
    report.errors.push_back(ExactReal::rational(mpq_class(hiprec::to_mpz(report.count(d)))) - b);
    report.predictions.push_back(std::move(b));
  }
  return report;
}

ExactReal benford_error(const mpq_class& a, long d, std::uint64_t n, long radix, unsigned threads) {
  detail::check_digit(d, radix);
  return count_digits(a, n, radix, threads).error(d);
}

std::uint64_t interval_count(const ExactReal& alpha, const UnitInterval& interval, std::uint64_t n,
                             unsigned threads) {
  if (n == 0) throw std::invalid_argument("N must be positive");
  if (alpha.as_rational()) throw RationalLog("alpha = " + alpha.to_string() + " is rational");
  if (interval.empty()) return 0;
  std::vector<ExactReal> boundaries;
  const bool lo_open = !is_zero(interval.lo());
  if (lo_open) boundaries.push_back(interval.lo());
  if (!is_one(interval.hi())) boundaries.push_back(interval.hi());
  const hiprec::BoundaryClassifier classifier(alpha, boundaries, n);
  return count_cells_parallel(classifier, n, threads)[lo_open ? 1 : 0];
}

ExactReal interval_discrepancy(const ExactReal& alpha, const UnitInterval& interval,
                               std::uint64_t n, unsigned threads) {
  const std::uint64_t hits = interval_count(alpha, interval, n, threads);
  return ExactReal::rational(mpq_class(hiprec::to_mpz(hits))) - interval.length() * hiprec::to_mpz(n);
}

ExactReal ErrorSeries::exact_value(std::size_t i) const {
  return ExactReal::rational(mpq_class(hiprec::to_mpz(counts.at(i)))) -
         digit_probability(digit, radix) * hiprec::to_mpz(indices.at(i));
}

ErrorSeries error_series(const mpq_class& a, long d, std::uint64_t n_max, long radix,
                         std::uint64_t stride, unsigned threads) {
  detail::check_digit(d, radix);
  if (n_max == 0) throw std::invalid_argument("N must be positive");
  if (stride == 0) throw std::invalid_argument("stride must be >= 1");
  const hiprec::BoundaryClassifier classifier = digit_classifier(a, radix, n_max);
  const hiprec::PrecReal p = detail::probability_value(d, radix);
  const auto target = static_cast<unsigned>(d - 1);

  // Pass 1 counts hits per segment so each segment knows its starting S_d;
  // pass 2 produces the values. Both passes are exact, so the result does
  // not depend on how the range was split.
  const std::vector<Segment> segments = split(n_max, resolve_threads(threads));
  std::vector<std::uint64_t> offsets(segments.size(), 0);
  if (segments.size() > 1) {
    std::vector<std::vector<std::uint64_t>> partial(segments.size(),
                                                    std::vector<std::uint64_t>(classifier.cell_count(), 0));
    run_segments(segments, [&](std::size_t i, Segment s) {
      if (i + 1 < segments.size()) classifier.count_cells(s.start, s.count, partial[i]);
    });
    for (std::size_t i = 1; i < segments.size(); ++i) offsets[i] = offsets[i - 1] + partial[i - 1][target];
  }

  struct Part {
    std::vector<std::uint64_t> indices, counts;
    std::vector<Q64> values;
    Q64 min, max;
    std::uint64_t argmin = 0, argmax = 0;
  };
  std::vector<Part> parts(segments.size());
  run_segments(segments, [&](std::size_t i, Segment s) {
    Part& part = parts[i];
    hiprec::Q64Multiples expected(p, s.start);
    std::uint64_t hits = offsets[i];
    classifier.for_each(s.start, s.count, [&](std::uint64_t n, unsigned cell) {
      hits += cell == target ? 1 : 0;
      const Q64 v = Q64::from_integer(static_cast<std::int64_t>(hits)) - expected.current();
      expected.advance();
      if (part.argmin == 0 || v < part.min) {
        part.min = v;
        part.argmin = n;
      }
      if (part.argmax == 0 || v > part.max) {
        part.max = v;
        part.argmax = n;
      }
      if (n % stride == 0) {
        part.indices.push_back(n);
        part.counts.push_back(hits);
        part.values.push_back(v);
      }
    });
  });

  ErrorSeries series;
  series.base = a;
  series.radix = radix;
  series.digit = d;
  series.n_max = n_max;
  series.stride = stride;
  for (Part& part : parts) {
    if (series.argmin == 0 || part.min < series.min) {
      series.min = part.min;
      series.argmin = part.argmin;
    }
    if (series.argmax == 0 || part.max > series.max) {
      series.max = part.max;
      series.argmax = part.argmax;
    }
    series.indices.insert(series.indices.end(), part.indices.begin(), part.indices.end());
    series.counts.insert(series.counts.end(), part.counts.begin(), part.counts.end());
    series.values.insert(series.values.end(), part.values.begin(), part.values.end());
  }
  return series;
}

unsigned brute_force_digit(const mpq_class& a, std::uint64_t n, long radix) {
  if (a <= 0) throw std::invalid_argument("base must be positive");
  if (radix < 2) throw std::invalid_argument("radix must be >= 2");
  if (n == 0) throw std::invalid_argument("brute_force_digit: n must be positive");
  mpq_class q = a;
  q.canonicalize();
  const std::uint64_t bit_cost = mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  constexpr std::uint64_t kCap = std::uint64_t{1} << 24;
  if (n > kCap / bit_cost) throw OracleTooLarge("n * bits(a) exceeds 2^24");

  const auto e = static_cast<unsigned long>(n);
  mpz_class num, den, r = static_cast<unsigned long>(radix);
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  // Estimate the radix exponent from bit lengths, then correct it exactly.
  const double bits = static_cast<double>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                      static_cast<double>(mpz_sizeinbase(den.get_mpz_t(), 2));
  long exponent = static_cast<long>(std::floor(bits / std::log2(static_cast<double>(radix))));
  mpz_class scale;
  for (;;) {
    mpz_pow_ui(scale.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(std::labs(exponent)));
    mpz_class digit;
    if (exponent >= 0) {
      digit = num / (den * scale);
    } else {
      digit = (num * scale) / den;
    }
    if (digit == 0) {
      --exponent;
    } else if (digit >= r) {
      ++exponent;
    } else {
      return static_cast<unsigned>(digit.get_ui());
    }
  }
}

}  // namespace benford::digitcount
