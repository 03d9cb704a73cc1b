#include <cstdint>
#include <string>
#include <vector>

#include "benfordlab/digitcount/digitcount.hpp"
#include "benfordlab/errors.hpp"
#include "doctest.h"

using namespace benford::digitcount;
using benford::hiprec::Q64;

namespace {

// Leading decimal digits of a^1..a^n by repeated exact multiplication.
std::vector<unsigned> exact_leading_digits(long a, std::uint64_t n) {
  std::vector<unsigned> out;
  mpz_class p = 1;
  for (std::uint64_t k = 1; k <= n; ++k) {
    p *= a;
    out.push_back(static_cast<unsigned>(p.get_str()[0] - '0'));
  }
  return out;
}

bool exactly_zero(const ExactReal& x) { return x.as_rational() == std::optional<mpq_class>(mpq_class(0)); }

double value_of(const ExactReal& x) { return x.realize(128).to_double(); }

}  // namespace

TEST_CASE("brute_force_digit") {
  CHECK(brute_force_digit(2, 30) == 1);
  CHECK(brute_force_digit(mpq_class(1, 6), 1) == 1);
  CHECK(brute_force_digit(mpq_class(1, 2), 3) == 1);  // 0.125
  CHECK(brute_force_digit(mpq_class(1, 3), 2) == 1);  // 0.111...
  CHECK(brute_force_digit(mpq_class(9, 10), 1) == 9);
  CHECK(brute_force_digit(mpq_class(7, 2), 2) == 1);  // 12.25
  CHECK(brute_force_digit(10, 5) == 1);
  CHECK(brute_force_digit(3, 7, 2) == 1);
  CHECK(brute_force_digit(3, 3, 16) == 1);  // 27 = 0x1B
  CHECK(brute_force_digit(5, 2, 16) == 1);  // 25 = 0x19
  CHECK(brute_force_digit(15, 1, 16) == 15);
  CHECK_THROWS_AS(brute_force_digit(2, std::uint64_t{1} << 24), benford::OracleTooLarge);
  CHECK_THROWS_AS(brute_force_digit(0, 3), std::invalid_argument);
}

TEST_CASE("leading_digit small cases") {
  CHECK(leading_digit(10, mpq_class(2), 10) == 1);
  CHECK(leading_digit(5, mpq_class(3), 10) == 2);
  CHECK(leading_digit(2, mpq_class(2), 10) == 4);  // exact tie with log10 4
  CHECK(leading_digit(3, mpq_class(1, 2), 10) == 1);
  CHECK_THROWS_AS(leading_digit(3, mpq_class(100), 10), benford::RationalLog);
  CHECK_THROWS_AS(leading_digit(0, mpq_class(2), 10), std::invalid_argument);
}

TEST_CASE("leading_digit agrees with exact powers") {
  std::vector<long> bases;
  for (long a = 2; a <= 19; ++a) {
    if (a != 10) bases.push_back(a);
  }
  for (long a : bases) {
    const std::vector<unsigned> truth = exact_leading_digits(a, 10000);
    std::uint64_t mismatches = 0;
    for (std::uint64_t n = 1; n <= 10000; ++n) {
      if (leading_digit(n, mpq_class(a), 10) != truth[n - 1]) ++mismatches;
    }
    CHECK_MESSAGE(mismatches == 0, "a=" << a);
    CHECK(brute_force_digit(a, 10000) == truth.back());
  }
}

TEST_CASE("leading digits of rational bases and other radices") {
  for (std::uint64_t n = 1; n <= 300; ++n) {
    CHECK(leading_digit(n, mpq_class(3, 7), 10) == brute_force_digit(mpq_class(3, 7), n, 10));
    CHECK(leading_digit(n, mpq_class(3), 7) == brute_force_digit(3, n, 7));
    CHECK(leading_digit(n, mpq_class(10), 16) == brute_force_digit(10, n, 16));
  }
}

TEST_CASE("count_digits for 2^1..2^10") {
  const DigitCountReport r = count_digits(2, 10, 10, 1);
  CHECK(r.counts == std::vector<std::uint64_t>{3, 2, 1, 1, 1, 1, 0, 1, 0});
  ExactReal total_error;
  ExactReal total_prediction;
  for (long d = 1; d <= 9; ++d) {
    total_error += r.error(d);
    total_prediction += r.prediction(d);
  }
  CHECK(exactly_zero(total_error));
  CHECK(total_prediction.as_rational() == std::optional<mpq_class>(mpq_class(10)));
  CHECK(value_of(r.error(1)) == doctest::Approx(3 - 10 * 0.30102999566398120));
}

TEST_CASE("count_digits matches exact enumeration and is thread invariant") {
  for (long a : {3L, 7L, 13L}) {
    const std::vector<unsigned> truth = exact_leading_digits(a, 5000);
    std::vector<std::uint64_t> expect(9, 0);
    for (unsigned d : truth) ++expect[d - 1];
    CHECK(count_digits(a, 5000, 10, 1).counts == expect);
  }
  const DigitCountReport one = count_digits(3, 2000000, 10, 1);
  const DigitCountReport many = count_digits(3, 2000000, 10, 7);
  CHECK(one.counts == many.counts);
  std::uint64_t sum = 0;
  for (std::uint64_t c : one.counts) sum += c;
  CHECK(sum == 2000000);
}

TEST_CASE("count_digits rejects rational logarithms") {
  CHECK_THROWS_AS(count_digits(10, 100), benford::RationalLog);
  CHECK_THROWS_AS(count_digits(mpq_class(1, 10), 100), benford::RationalLog);
  CHECK_THROWS_AS(count_digits(1, 100), benford::RationalLog);
  CHECK_THROWS_AS(count_digits(8, 100, 2), benford::RationalLog);
  CHECK_THROWS_AS(count_digits(2, 0), std::invalid_argument);
}

TEST_CASE("benford_error single terms") {
  CHECK(value_of(benford_error(2, 1, 1)) == doctest::Approx(-0.30102999566398120));
  CHECK(value_of(benford_error(9, 9, 1)) == doctest::Approx(1 - 0.045757490560675125));
  CHECK_THROWS_AS(benford_error(2, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(benford_error(2, 0, 1), std::invalid_argument);
}

TEST_CASE("interval discrepancy") {
  const ExactReal log2 = ExactReal::log(mpq_class(2), 10);
  CHECK(exactly_zero(interval_discrepancy(log2, UnitInterval::exact(0, 1), 12345)));
  CHECK(exactly_zero(interval_discrepancy(log2, UnitInterval::exact(mpq_class(1, 3), mpq_class(1, 3)), 50)));

  // {n sqrt 2} = .414 .828 .243 .657 .071 .485 against [0, 1/2)
  const ExactReal root2 = ExactReal::sqrt(1, 2);
  const UnitInterval half = UnitInterval::exact(0, mpq_class(1, 2));
  const std::vector<mpq_class> expect = {mpq_class(1, 2), 0, mpq_class(1, 2), 0, mpq_class(1, 2), 1};
  for (std::uint64_t n = 1; n <= 6; ++n) {
    CHECK(interval_discrepancy(root2, half, n).as_rational() == std::optional<mpq_class>(expect[n - 1]));
  }
  CHECK_THROWS_AS(interval_discrepancy(ExactReal::rational(mpq_class(1, 3)), half, 5), benford::RationalLog);
}

TEST_CASE("Benford error equals the interval discrepancy of the digit interval") {
  const ExactReal alpha = ExactReal::log(mpq_class(2), 10);
  for (long d = 1; d <= 9; ++d) {
    const ErrorSeries s = error_series(2, d, 10000, 10, 1, 1);
    for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 17ULL, 93ULL, 485ULL, 2136ULL, 9999ULL, 10000ULL}) {
      const ExactReal delta = interval_discrepancy(alpha, UnitInterval::digit(d, 10), n, 1);
      CHECK_MESSAGE(exactly_zero(s.exact_value(n - 1) - delta), "d=" << d << " n=" << n);
    }
  }
}

TEST_CASE("error series") {
  const ErrorSeries s = error_series(2, 1, 10, 10, 1, 1);
  REQUIRE(s.size() == 10);
  CHECK(s.values.back().to_double() == doctest::Approx(3 - 10 * 0.30102999566398120));
  CHECK(s.counts.back() == 3);

  SUBCASE("Q64 values are within 2^-64 of the exact errors") {
    const ErrorSeries t = error_series(3, 4, 3000, 10, 1, 1);
    for (std::size_t i = 0; i < t.size(); i += 7) {
      const mpz_class exact = t.exact_value(i).realize(192).with_bits(64).scaled();
      CHECK(abs(exact - t.values[i].to_mpz_scaled()) <= 1);
    }
  }
  SUBCASE("one-step recurrence") {
    const ErrorSeries t = error_series(7, 3, 5000, 10, 1, 1);
    const Q64 p = Q64::from_prec_real(digit_probability(3, 10).realize(128));
    for (std::size_t i = 1; i < t.size(); ++i) {
      const std::uint64_t step = t.counts[i] - t.counts[i - 1];
      CHECK(step <= 1);
      CHECK(exactly_zero(t.exact_value(i) - t.exact_value(i - 1) - ExactReal(static_cast<long>(step)) +
                         digit_probability(3, 10)));
      const Q64 expect = Q64::from_integer(static_cast<std::int64_t>(step)) - p;
      const __int128 diff = (t.values[i] - t.values[i - 1] - expect).raw();
      CHECK((diff >= -1 && diff <= 1));
    }
  }
  SUBCASE("stride and thread invariance") {
    const ErrorSeries full = error_series(2, 4, 300000, 10, 1, 1);
    const ErrorSeries thin = error_series(2, 4, 300000, 10, 10, 1);
    const ErrorSeries par = error_series(2, 4, 300000, 10, 10, 5);
    REQUIRE(thin.size() == 30000);
    for (std::size_t i = 0; i < thin.size(); ++i) {
      CHECK(thin.indices[i] == 10 * (i + 1));
      CHECK(thin.values[i] == full.values[10 * i + 9]);
    }
    CHECK(par.values == thin.values);
    CHECK(par.counts == thin.counts);
    CHECK(thin.min == full.min);
    CHECK(thin.argmax == full.argmax);
    CHECK(par.argmin == full.argmin);
  }
  SUBCASE("streaming variant matches") {
    const ErrorSeries t = error_series(5, 2, 2000, 10, 1, 1);
    std::vector<Q64> streamed;
    for_each_error(5, 2, 2000, 10, [&](std::uint64_t, Q64 v) { streamed.push_back(v); });
    CHECK(streamed == t.values);
  }
  SUBCASE("lower perfect hit bound for digit 1 of 2^n") {
    const ErrorSeries t = error_series(2, 1, 1000000, 10, 1000, 1);
    CHECK(t.min > Q64::from_integer(-1));
    CHECK(t.max <= Q64::from_integer(0));
  }
  CHECK_THROWS_AS(error_series(2, 1, 10, 10, 0), std::invalid_argument);
}
