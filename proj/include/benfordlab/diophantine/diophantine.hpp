#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace benford::diophantine {

struct PowerSolution {
  long k = 0;
  long m = 0;
  friend bool operator==(const PowerSolution&, const PowerSolution&) = default;
};

// Integer k != 0 and m with a^k = target * radix^m. Comparing prime
// exponents gives k v_p(a) - m v_p(radix) = v_p(target) for every prime p;
// since log_radix(a) is irrational the (v_p(a)) and (v_p(radix)) columns are
// independent, so a solution, if any, is unique and comes from any
// nonsingular 2x2 minor. Throws RationalLog when log_radix(a) is rational
// (including a = 1).
std::optional<PowerSolution> solve_power_equation(const mpq_class& a, const mpq_class& target,
                                                  long radix = 10);

enum class Verdict { Unbounded, Bounded, LowerPerfectHit, UpperPerfectHit };

// "unbounded", "bounded", "lower-perfect-hit", "upper-perfect-hit".
std::string verdict_name(Verdict v);

struct Classification {
  mpq_class base;
  long digit = 1;
  long radix = 10;
  Verdict verdict = Verdict::Unbounded;
  long k = 0;  // meaningful unless Unbounded
  long m = 0;
  std::string witness;  // e.g. "2^1 = (2/1)*10^0"; empty when Unbounded

  bool bounded() const { return verdict != Verdict::Unbounded; }
};

// Bounded iff a^k = ((d+1)/d) radix^m has a solution. A lower perfect hit is
// the k = 1 solution for d = 1 (a = 2 radix^m); an upper perfect hit is the
// k = -1 solution for d = radix - 1 (a = (radix - 1) radix^m). Throws
// std::invalid_argument for d outside 1..radix-1 or radix < 3 (in radix 2
// every leading digit is 1 and the error vanishes identically), RationalLog
// when log_radix(a) is rational.
Classification classify(const mpq_class& a, long d, long radix = 10);

// Integers a in [2, a_max], not divisible by radix and with irrational
// log_radix(a), whose digit-d error is bounded. Ascending.
std::vector<long> enumerate_bounded_bases(long d, long a_max, long radix = 10);

}  // namespace benford::diophantine
