#include <cstdint>
#include <random>
#include <vector>

#include "benfordlab/closedform/closedform.hpp"
#include "benfordlab/digitcount/digitcount.hpp"
#include "benfordlab/errors.hpp"
#include "doctest.h"

using namespace benford::closedform;
using benford::digitcount::error_series;
using benford::digitcount::ErrorSeries;
using benford::digitcount::interval_discrepancy;

namespace {

const ExactReal kLog2 = ExactReal::log(mpq_class(2), 10);

bool exactly_zero(const ExactReal& x) { return x.as_rational() == std::optional<mpq_class>(mpq_class(0)); }

double value_of(const ExactReal& x) { return x.realize(128).to_double(); }

}  // namespace

TEST_CASE("count_doubling_interval") {
  CHECK(count_doubling_interval(1, 10) == 3);
  CHECK(count_doubling_interval(2, 1) == 1);
  CHECK(count_doubling_interval(5, 1) == 0);
  CHECK(count_doubling_interval(5, 2) == 0);
  CHECK(count_doubling_interval(1, 1000000000) == 301029995);
  CHECK_THROWS_AS(count_doubling_interval(6, 10), std::invalid_argument);
  CHECK_THROWS_AS(count_doubling_interval(0, 10), std::invalid_argument);

  // Against leading digits of 2^n in [d, 2d).
  std::vector<std::uint64_t> digit_counts(10, 0);
  mpz_class p = 1;
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    p *= 2;
    ++digit_counts[static_cast<std::size_t>(p.get_str()[0] - '0')];
    for (long d = 1; d <= 5; ++d) {
      std::uint64_t direct = 0;
      for (long e = d; e < 2 * d && e <= 9; ++e) direct += digit_counts[static_cast<std::size_t>(e)];
      CHECK(count_doubling_interval(d, n) == direct);
    }
  }
}

TEST_CASE("closed forms for digits 1 and 4") {
  CHECK(value_of(e1_closed(10)) == doctest::Approx(-0.0102999566398));
  CHECK(value_of(e4_closed(1)) == doctest::Approx(-0.0969100130080564));
  CHECK_THROWS_AS(e1_closed(0), std::invalid_argument);

  const ErrorSeries e1 = error_series(2, 1, 5000, 10, 1, 1);
  const ErrorSeries e4 = error_series(2, 4, 5000, 10, 1, 1);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    const ExactReal c1 = e1_closed(n);
    const ExactReal c4 = e4_closed(n);
    CHECK(exactly_zero(c1 - e1.exact_value(n - 1)));
    CHECK(exactly_zero(c4 - e4.exact_value(n - 1)));
    const double v1 = value_of(c1);
    const double v4 = value_of(c4);
    CHECK((v1 > -1 && v1 <= 0));
    CHECK((v4 >= -1 && v4 < 2));
  }
}

TEST_CASE("Ostrowski spec validation") {
  CHECK_THROWS_AS(ostrowski_delta(OstrowskiSpec{kLog2, 0, ExactReal(0)}, 5), std::invalid_argument);
  // {alpha} = 0.301, so s must be at most 0.699.
  CHECK_THROWS_AS(ostrowski_delta(OstrowskiSpec{kLog2, 1, ExactReal::rational(mpq_class(7, 10))}, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(ostrowski_delta(OstrowskiSpec{kLog2, 1, ExactReal(-1)}, 5), std::invalid_argument);
  CHECK_THROWS_AS(ostrowski_delta(OstrowskiSpec{ExactReal::rational(mpq_class(1, 3)), 1, ExactReal(0)}, 5),
                  benford::RationalLog);
  // s = 1 - {alpha} puts the interval flush against 1.
  const OstrowskiSpec edge{kLog2, 1, ExactReal(1) - kLog2};
  CHECK(exactly_zero(ostrowski_delta(edge, 40) - interval_discrepancy(kLog2, edge.interval(), 40, 1)));
}

TEST_CASE("Ostrowski formula special cases") {
  for (std::uint64_t n : {1ULL, 7ULL, 100ULL, 12345ULL}) {
    // k = 1, s = 0 telescopes to -{N alpha}.
    CHECK(exactly_zero(ostrowski_delta(OstrowskiSpec{kLog2, 1, ExactReal(0)}, n) - e1_closed(n)));
  }
  const OstrowskiSpec four{kLog2, -3, ExactReal::log(mpq_class(4), 10)};
  CHECK(exactly_zero(four.interval().length() - ExactReal::log(mpq_class(5, 4), 10)));
  const ErrorSeries e4 = error_series(2, 4, 100, 10, 1, 1);
  CHECK(exactly_zero(ostrowski_delta(four, 100) - e4.exact_value(99)));
  CHECK(exactly_zero(ostrowski_delta(four, 100) -
                     interval_discrepancy(kLog2, UnitInterval::digit(4, 10), 100, 1)));

  // alpha = sqrt 2, k = 2, s = 1/10: [0.1, 0.928...) by direct enumeration.
  const ExactReal root2 = ExactReal::sqrt(1, 2);
  const OstrowskiSpec spec{root2, 2, ExactReal::rational(mpq_class(1, 10))};
  const double length = 2 * 1.4142135623730951 - 2;
  std::uint64_t hits = 0;
  for (std::uint64_t n = 1; n <= 50; ++n) {
    const double f = n * 1.4142135623730951 - static_cast<double>(static_cast<std::uint64_t>(n * 1.4142135623730951));
    hits += (f >= 0.1 && f < 0.1 + length) ? 1 : 0;
    const double direct = static_cast<double>(hits) - static_cast<double>(n) * length;
    CHECK(value_of(ostrowski_delta(spec, n)) == doctest::Approx(direct).epsilon(1e-9));
  }
  CHECK(exactly_zero(ostrowski_delta(spec, 50) - interval_discrepancy(root2, spec.interval(), 50, 1)));
}

TEST_CASE("Ostrowski formula equals the counted discrepancy on random instances") {
  std::mt19937_64 rng(20240611);
  const std::vector<ExactReal> alphas = {kLog2, ExactReal::log(mpq_class(3), 10), ExactReal::log(mpq_class(7), 10),
                                         ExactReal::sqrt(1, 2), ExactReal::sqrt(mpq_class(1, 3), 5)};
  for (int trial = 0; trial < 60; ++trial) {
    const ExactReal& alpha = alphas[rng() % alphas.size()];
    long k = static_cast<long>(rng() % 8) + 1;
    if (rng() % 2 == 0) k = -k;
    const std::uint64_t n = rng() % 3000 + 1;
    const double room = 1 - value_of(benford::hiprec::certified_frac(alpha * k, 128));
    const mpq_class s(static_cast<long>(room * (rng() % 1000) / 1000.0 * 1e6), 1000000);
    const OstrowskiSpec spec{alpha, k, ExactReal::rational(s)};
    const ExactReal counted = interval_discrepancy(alpha, spec.interval(), n, 1);
    CHECK_MESSAGE(exactly_zero(ostrowski_delta(spec, n) - counted),
                  "alpha=" << alpha.to_string() << " k=" << k << " n=" << n << " s=" << s.get_str());
  }
}

TEST_CASE("Kesten numeric screen") {
  const PrecReal alpha = kLog2.realize(256);
  CHECK(kesten_bounded_numeric(alpha, UnitInterval::digit(1, 10), 100) == std::optional<long>(1));
  CHECK(kesten_bounded_numeric(alpha, UnitInterval::digit(4, 10), 100) == std::optional<long>(-3));
  CHECK(kesten_bounded_numeric(alpha, UnitInterval::digit(2, 10), 10000) == std::nullopt);
  CHECK(kesten_bounded_numeric(ExactReal::log(mpq_class(9), 10).realize(256), UnitInterval::digit(9, 10), 10) ==
        std::optional<long>(-1));
}

TEST_CASE("limit mixtures") {
  SUBCASE("digit 1 of 2^n is uniform on [-1, 0]") {
    const UniformMixture m = limit_mixture(1, kLog2, ExactReal(0));
    REQUIRE(m.pieces.size() == 1);
    CHECK(m.pieces[0].lo_value == doctest::Approx(-1.0));
    CHECK(m.pieces[0].hi_value == doctest::Approx(0.0));
    CHECK(static_cast<double>(mixture_cdf(m, -0.5L)) == doctest::Approx(0.5));
    CHECK(mixture_cdf(m, -2.0L) == 0.0L);
    CHECK(mixture_cdf(m, 0.5L) == 1.0L);
  }
  SUBCASE("digit 4 of 2^n has three density levels") {
    const UniformMixture m = limit_mixture(-3, kLog2, ExactReal::log(mpq_class(4), 10));
    REQUIRE(m.pieces.size() == 3);
    const double a = 0.30102999566398120;
    CHECK(static_cast<double>(m.support_lo()) == doctest::Approx(3 * a - 1));
    CHECK(static_cast<double>(m.support_hi()) == doctest::Approx(2 - 3 * a));
    const std::vector<std::pair<double, double>> levels = {
        {3 * a - 1 + 1e-6, 1.0 / 3}, {-1e-6, 1.0 / 3},     {1e-6, 2.0 / 3},         {1 - 3 * a - 1e-6, 2.0 / 3},
        {1 - 3 * a + 1e-6, 1.0},     {0.5, 1.0},           {3 * a - 1e-6, 1.0},     {3 * a + 1e-6, 2.0 / 3},
        {1 - 1e-6, 2.0 / 3},         {1 + 1e-6, 1.0 / 3},  {2 - 3 * a - 1e-6, 1.0 / 3}, {2 - 3 * a + 1e-6, 0.0},
        {3 * a - 1 - 1e-6, 0.0}};
    for (const auto& [x, level] : levels) {
      CHECK_MESSAGE(static_cast<double>(mixture_pdf(m, x)) == doctest::Approx(level).epsilon(1e-9), "x=" << x);
    }
    CHECK(static_cast<double>(mixture_cdf(m, m.support_hi())) == doctest::Approx(1.0));
    ExactReal total;
    for (const UniformPiece& p : m.pieces) total += p.weight;
    CHECK(total.as_rational() == std::optional<mpq_class>(mpq_class(1)));
    // Piece areas sum to one.
    long double area = 0;
    for (const UniformPiece& p : m.pieces) area += p.weight_value;
    CHECK(static_cast<double>(area) == doctest::Approx(1.0));
  }
  SUBCASE("digit 9 of 9^n is uniform on [0, 1]") {
    const ExactReal alpha = ExactReal::log(mpq_class(9), 10);
    const UniformMixture m = limit_mixture(-1, alpha, alpha);
    REQUIRE(m.pieces.size() == 1);
    CHECK(m.pieces[0].lo_value == doctest::Approx(0.0));
    CHECK(m.pieces[0].hi_value == doctest::Approx(1.0));
  }
  SUBCASE("support is longer than 1 when |k| >= 2") {
    for (long k : {2L, -2L, 3L, 5L, -7L}) {
      const UniformMixture m = limit_mixture(k, ExactReal::sqrt(1, 2), ExactReal(0));
      CHECK(m.pieces.size() == static_cast<std::size_t>(std::labs(k)));
      CHECK(static_cast<double>(m.support_hi() - m.support_lo()) > 1.0);
    }
  }
  CHECK_THROWS_AS(limit_mixture(0, kLog2, ExactReal(0)), std::invalid_argument);
}
