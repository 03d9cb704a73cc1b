#pragma once

#include <gmpxx.h>

#include <string>

#include "benfordlab/hiprec/exact_real.hpp"

namespace benford::hiprec {

// Half-open [lo, hi) inside [0, 1]. Endpoints are exact reals, so symbolic
// endpoints log_radix(d) are realized at whatever precision a comparison
// needs. lo == hi is the explicit empty interval.
class UnitInterval {
 public:
  // Throws std::invalid_argument unless 0 <= lo <= hi <= 1.
  UnitInterval(ExactReal lo, ExactReal hi);

  // I_d = [log_radix d, log_radix(d+1)); the last digit ends at exactly 1.
  static UnitInterval digit(long d, long radix);
  static UnitInterval exact(const mpq_class& lo, const mpq_class& hi);

  const ExactReal& lo() const { return lo_; }
  const ExactReal& hi() const { return hi_; }
  ExactReal length() const { return hi_ - lo_; }
  bool empty() const { return empty_; }
  std::string to_string() const;

 private:
  ExactReal lo_;
  ExactReal hi_;
  bool empty_ = false;
};

}  // namespace benford::hiprec
