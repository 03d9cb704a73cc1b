#include <cstdint>
#include <vector>

#include "benfordlab/errors.hpp"
#include "benfordlab/hiprec/continued_fraction.hpp"
#include "benfordlab/hiprec/exact_real.hpp"
#include "benfordlab/hiprec/frac.hpp"
#include "benfordlab/hiprec/interval.hpp"
#include "benfordlab/hiprec/log.hpp"
#include "benfordlab/hiprec/membership.hpp"
#include "benfordlab/hiprec/precision.hpp"
#include "benfordlab/hiprec/q64.hpp"
#include "doctest.h"
#include "mpfr_oracle.hpp"

using namespace benford::hiprec;

namespace {

mpz_class pow2(unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// |stored - reference| on the circle of circumference 2^bits.
mpz_class circle_gap(const mpz_class& a, const mpz_class& b, unsigned bits) {
  mpz_class d = a - b;
  mpz_fdiv_r_2exp(d.get_mpz_t(), d.get_mpz_t(), bits);
  const mpz_class other = pow2(bits) - d;
  return d < other ? d : other;
}

std::vector<ExactReal> digit_boundaries(long radix) {
  std::vector<ExactReal> out;
  for (long d = 2; d < radix; ++d) out.push_back(ExactReal::log(mpq_class(d), radix));
  return out;
}

}  // namespace

TEST_CASE("log_radix matches the MPFR oracle within err_ulp") {
  const std::vector<mpq_class> args = {mpq_class(2),    mpq_class(3),      mpq_class(7),
                                       mpq_class(1, 2), mpq_class(5, 4),   mpq_class(10, 9),
                                       mpq_class(1125), mpq_class(999983), mpq_class(3, 7000)};
  for (long radix : {10L, 2L, 7L, 16L}) {
    for (unsigned bits : {64u, 128u, 156u, 521u}) {
      for (const mpq_class& a : args) {
        const PrecReal r = log_radix(a, radix, bits);
        CHECK(r.bits() == bits);
        CHECK(r.err_ulp() <= 2);
        const mpz_class ref = oracle::scaled_log(a.get_num(), a.get_den(), radix, bits);
        const mpz_class gap = abs(r.scaled() - ref);
        // The oracle rounds to nearest, so allow half an ulp on its side.
        CHECK_MESSAGE(gap <= r.err_ulp() + 1, "a=" << a.get_str() << " radix=" << radix);
      }
    }
  }
}

TEST_CASE("log_radix exact and negative cases") {
  const PrecReal one = log_radix(mpq_class(10), 10, 128);
  CHECK(one.scaled() == pow2(128));
  CHECK(one.err_ulp() == 0);
  CHECK(log_radix(mpq_class(1, 100), 10, 128).scaled() == -2 * pow2(128));

  const PrecReal half = log_radix(mpq_class(1, 2), 10, 128);
  const PrecReal two = log_radix(mpq_class(2), 10, 128);
  CHECK(abs(half.scaled() + two.scaled()) <= half.err_ulp() + two.err_ulp());
  CHECK(half.int_part() == -1);
  CHECK(half.to_double() == doctest::Approx(-0.30102999566398120));

  CHECK_THROWS_AS(log_radix(mpq_class(0), 10, 128), std::invalid_argument);
  CHECK_THROWS_AS(log_radix(mpq_class(-3), 10, 128), std::invalid_argument);
  CHECK_THROWS_AS(log_radix(mpq_class(2), 1, 128), std::invalid_argument);
  CHECK_THROWS_AS(log_radix(mpq_class(2), 10, 32), std::invalid_argument);
}

TEST_CASE("is_log_rational") {
  CHECK(is_log_rational(mpq_class(100), 10));
  CHECK(is_log_rational(mpq_class(1, 10), 10));
  CHECK(is_log_rational(mpq_class(1), 10));
  CHECK_FALSE(is_log_rational(mpq_class(2), 10));
  CHECK_FALSE(is_log_rational(mpq_class(20), 10));
  CHECK(is_log_rational(mpq_class(8), 4));   // 3/2
  CHECK(is_log_rational(mpq_class(4), 8));   // 2/3
  CHECK_FALSE(is_log_rational(mpq_class(6), 36 * 2));
  CHECK(is_log_rational(mpq_class(1, 6), 36));
}

TEST_CASE("default precision policy") {
  CHECK(default_bits(1000000000) == 156);
  CHECK(default_bits(1) == 96);
  CHECK(default_bits(2) == 98);
  CHECK(default_bits(1024) == 116);
  CHECK(default_bits(1025) == 118);
}

TEST_CASE("frac_at is exact integer arithmetic") {
  const PrecReal alpha = log_radix(mpq_class(2), 10, 128);
  const FixedFrac one = frac_at(1, alpha);
  CHECK(one.frac == alpha.frac_mantissa());
  CHECK(one.err_ulp == alpha.err_ulp());

  const FixedFrac ten = frac_at(10, alpha);
  mpz_class expect = alpha.scaled() * 10;
  mpz_fdiv_r_2exp(expect.get_mpz_t(), expect.get_mpz_t(), 128);
  CHECK(ten.frac == expect);
  CHECK(ten.to_double() == doctest::Approx(0.0102999566398).epsilon(1e-9));

  const FixedFrac big = frac_at(1000000000, log_radix(mpq_class(2), 10, 192));
  CHECK(big.err_ulp <= 2000000000);
  CHECK_THROWS_AS(frac_at(0, alpha), std::invalid_argument);
}

TEST_CASE("frac_stream equals frac_at and is segmentable") {
  const PrecReal alpha = log_radix(mpq_class(3), 10, 156);
  const auto whole = frac_stream(alpha, 1, 2000);
  for (std::uint64_t n = 1; n <= 2000; ++n) CHECK(whole[n - 1] == frac_at(n, alpha));
  auto left = frac_stream(alpha, 1, 777);
  const auto right = frac_stream(alpha, 778, 1223);
  left.insert(left.end(), right.begin(), right.end());
  CHECK(left == whole);

  // A stream started deep in the sequence still matches.
  const auto deep = frac_stream(alpha, 123456789012ULL, 3);
  CHECK(deep[2] == frac_at(123456789014ULL, alpha));
}

TEST_CASE("fractional parts are sound against exact powers") {
  const unsigned bits = default_bits(1000000);
  for (long a : {2L, 3L, 5L, 7L}) {
    const PrecReal alpha = log_radix(mpq_class(a), 10, bits);
    // Dense check on small n, sparse on the rest of 1..10^6.
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = 1; n <= 600; ++n) ns.push_back(n);
    for (std::uint64_t n = 601; n <= 1000000; n += 9973) ns.push_back(n);
    ns.push_back(1000000);
    for (std::uint64_t n : ns) {
      mpz_class power;
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(a), n);
      const mpz_class truth = oracle::scaled_mantissa_log(power, 10, bits);
      const FixedFrac x = frac_at(n, alpha);
      CHECK_MESSAGE(circle_gap(x.frac, truth, bits) <= x.err_ulp + 1, "a=" << a << " n=" << n);
    }
  }
}

TEST_CASE("unit intervals") {
  const UnitInterval i4 = UnitInterval::digit(4, 10);
  CHECK_FALSE(i4.empty());
  CHECK(i4.length().realize(128).to_double() == doctest::Approx(0.09691001300805642));
  CHECK(UnitInterval::digit(9, 10).hi().as_rational() == mpq_class(1));
  CHECK(UnitInterval::exact(mpq_class(1, 3), mpq_class(1, 3)).empty());
  CHECK_THROWS_AS(UnitInterval::exact(mpq_class(1, 2), mpq_class(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(UnitInterval::exact(mpq_class(-1, 2), mpq_class(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(UnitInterval::digit(10, 10), std::invalid_argument);
}

TEST_CASE("resolve_membership") {
  const ExactReal alpha = ExactReal::log(mpq_class(2), 10);
  const PrecReal value = alpha.realize(128);
  const UnitInterval i4 = UnitInterval::digit(4, 10);

  SUBCASE("far from endpoints") {
    CHECK(resolve_membership(frac_at(1, value), UnitInterval::digit(2, 10), alpha) ==
          Membership::Inside);
    CHECK(resolve_membership(frac_at(1, value), i4, alpha) == Membership::Outside);
  }
  SUBCASE("exact tie on the left endpoint: 2^2 = 4") {
    CHECK(resolve_membership(frac_at(2, value), i4, alpha) == Membership::Inside);
    CHECK(resolve_membership(frac_at(2, value), UnitInterval::digit(3, 10), alpha) ==
          Membership::Outside);
  }
  SUBCASE("inflated error forces escalation and still matches the exact digit") {
    for (std::uint64_t n = 1; n <= 60; ++n) {
      FixedFrac x = frac_at(n, value);
      x.err_ulp = pow2(100);
      mpz_class power;
      mpz_ui_pow_ui(power.get_mpz_t(), 2, n);
      const char lead = power.get_str()[0];
      CHECK((resolve_membership(x, i4, alpha) == Membership::Inside) == (lead == '4'));
    }
  }
  SUBCASE("empty and full intervals") {
    const UnitInterval empty = UnitInterval::exact(mpq_class(1, 3), mpq_class(1, 3));
    CHECK(resolve_membership(frac_at(7, value), empty, alpha) == Membership::Outside);
    CHECK(resolve_membership(frac_at(7, value), UnitInterval::exact(0, 1), alpha) ==
          Membership::Inside);
  }
}

TEST_CASE("certified comparison gives up on a near-tie beyond the budget") {
  const ExactReal alpha = ExactReal::log(mpq_class(2), 10);
  const unsigned fine = 64 << (kMaxEscalations + 2);
  const PrecReal v = alpha.realize(fine);
  const ExactReal approx = ExactReal::rational(mpq_class(v.scaled(), pow2(fine)));
  CHECK_THROWS_AS(certified_sign(alpha - approx, 64), benford::AmbiguityBudgetExceeded);
  CHECK(certified_sign(alpha - alpha, 64) == 0);
}

TEST_CASE("BoundaryClassifier digits of 2^n") {
  const BoundaryClassifier c(ExactReal::log(mpq_class(2), 10), digit_boundaries(10), 10);
  std::vector<unsigned> digits;
  c.for_each(1, 10, [&](std::uint64_t, unsigned cell) { digits.push_back(cell + 1); });
  CHECK(digits == std::vector<unsigned>{2, 4, 8, 1, 3, 6, 1, 2, 5, 1});
  CHECK_THROWS_AS(c.cell(11), std::invalid_argument);
  CHECK_THROWS_AS(c.cell(0), std::invalid_argument);
}

TEST_CASE("BoundaryClassifier agrees with exact powers and the certified path") {
  for (long a : {2L, 3L, 7L, 11L, 75L}) {
    const std::uint64_t n_max = 3000;
    const BoundaryClassifier c(ExactReal::log(mpq_class(a), 10), digit_boundaries(10), n_max);
    mpz_class power = 1;
    std::uint64_t checked = 0;
    c.for_each(1, n_max, [&](std::uint64_t n, unsigned cell) {
      power *= a;
      const unsigned lead = static_cast<unsigned>(power.get_str()[0] - '0');
      CHECK(cell + 1 == lead);
      if (n % 97 == 0) CHECK(c.cell_exact(n) == cell);
      ++checked;
    });
    CHECK(checked == n_max);
  }
}

TEST_CASE("BoundaryClassifier segments agree and thin precision falls back safely") {
  const ExactReal alpha = ExactReal::log(mpq_class(3), 10);
  const BoundaryClassifier fast(alpha, digit_boundaries(10), 100000);
  // 64 bits cannot carry the fast-path guarantee, so every index is decided
  // on the slow path.
  const BoundaryClassifier slow(alpha, digit_boundaries(10), 100000, 64);
  std::vector<std::uint64_t> a(9, 0), b(9, 0), c(9, 0);
  fast.count_cells(1, 100000, a);
  fast.count_cells(1, 41234, b);
  fast.count_cells(41235, 100000 - 41234, b);
  slow.count_cells(1, 100000, c);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("BoundaryClassifier other radices and alphas") {
  // radix 2: no boundaries, every leading binary digit is 1.
  const BoundaryClassifier bin(ExactReal::log(mpq_class(3), 2), {}, 100);
  CHECK(bin.cell_count() == 1);
  CHECK(bin.cell(57) == 0);

  // {n sqrt 2} against 1/2 by direct enumeration of small n.
  const BoundaryClassifier root(ExactReal::sqrt(1, 2), {ExactReal::rational(mpq_class(1, 2))}, 6);
  std::vector<unsigned> cells;
  root.for_each(1, 6, [&](std::uint64_t, unsigned cell) { cells.push_back(cell); });
  // {n sqrt2} = .414, .828, .243, .657, .071, .485
  CHECK(cells == std::vector<unsigned>{0, 1, 0, 1, 0, 0});

  CHECK_THROWS_AS(BoundaryClassifier(ExactReal::sqrt(1, 2),
                                     {ExactReal::rational(mpq_class(1, 2)),
                                      ExactReal::rational(mpq_class(1, 3))},
                                     10),
                  std::invalid_argument);
}

TEST_CASE("continued fractions of quadratic irrationals") {
  const CFExpansion sqrt2 = continued_fraction(ExactReal::sqrt(1, 2).realize(256));
  REQUIRE(sqrt2.certified >= 60);
  CHECK(sqrt2.quotients[0] == 1);
  for (std::size_t i = 1; i < sqrt2.certified; ++i) CHECK(sqrt2.quotients[i] == 2);

  const CFExpansion sqrt3 = continued_fraction(ExactReal::sqrt(1, 3).realize(256));
  REQUIRE(sqrt3.certified >= 40);
  CHECK(sqrt3.quotients[0] == 1);
  for (std::size_t i = 1; i < sqrt3.certified; ++i) CHECK(sqrt3.quotients[i] == (i % 2 == 1 ? 1 : 2));

  const ExactReal phi = ExactReal::rational(mpq_class(1, 2)) + ExactReal::sqrt(mpq_class(1, 2), 5);
  const CFExpansion golden = continued_fraction(phi.realize(256), 50);
  CHECK(golden.certified == 50);
  for (const mpz_class& a : golden.quotients) CHECK(a == 1);
}

TEST_CASE("continued fraction of log10 2 against a finer expansion") {
  const CFExpansion cf = continued_fraction(log_radix(mpq_class(2), 10, 256));
  const CFExpansion fine = continued_fraction(log_radix(mpq_class(2), 10, 2048));
  REQUIRE(cf.certified >= 5);
  CHECK(fine.certified > cf.certified);
  const std::vector<mpz_class> prefix = {0, 3, 3, 9, 2};
  for (std::size_t i = 0; i < prefix.size(); ++i) CHECK(cf.quotients[i] == prefix[i]);
  for (std::size_t i = 0; i < cf.certified; ++i) CHECK(cf.quotients[i] == fine.quotients[i]);

  for (std::size_t i = 1; i < cf.convergents.size(); ++i) {
    const auto& [p, q] = cf.convergents[i];
    const auto& [pp, qp] = cf.convergents[i - 1];
    CHECK(p * qp - pp * q == (i % 2 == 1 ? 1 : -1));
    CHECK(q > qp);
  }
  CHECK(cf.convergents[3].second == 93);
}

TEST_CASE("Q64 conversions") {
  const Q64 x = Q64::from_prec_real(log_radix(mpq_class(2), 10, 128));
  CHECK(x.to_decimal(10) == "0.3010299957");
  CHECK((-x).to_decimal(5) == "-0.30103");
  CHECK(Q64::from_integer(-3).to_double() == -3.0);
  CHECK((Q64::from_integer(1) - kQ64Ulp).raw() == (static_cast<__int128>(1) << 64) - 1);
}
