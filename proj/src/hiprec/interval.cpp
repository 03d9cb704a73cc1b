#include "benfordlab/hiprec/interval.hpp"

#include <stdexcept>
#include <utility>

namespace benford::hiprec {
namespace {

constexpr unsigned kCheckBits = 128;

}  // namespace

UnitInterval::UnitInterval(ExactReal lo, ExactReal hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (certified_sign(lo_, kCheckBits) < 0 || certified_sign(hi_ - ExactReal(1), kCheckBits) > 0) {
    throw std::invalid_argument("UnitInterval: endpoints must lie in [0, 1]");
  }
  const int order = certified_sign(hi_ - lo_, kCheckBits);
  if (order < 0) throw std::invalid_argument("UnitInterval: lo must not exceed hi");
  empty_ = order == 0;
}

UnitInterval UnitInterval::digit(long d, long radix) {
  if (radix < 2) throw std::invalid_argument("UnitInterval::digit: radix must be >= 2");
  if (d < 1 || d >= radix) throw std::invalid_argument("UnitInterval::digit: digit out of range");
  ExactReal hi = d + 1 == radix ? ExactReal(1) : ExactReal::log(mpq_class(d + 1), radix);
  return UnitInterval(ExactReal::log(mpq_class(d), radix), std::move(hi));
}

UnitInterval UnitInterval::exact(const mpq_class& lo, const mpq_class& hi) {
  return UnitInterval(ExactReal::rational(lo), ExactReal::rational(hi));
}

std::string UnitInterval::to_string() const {
  return "[" + lo_.to_string() + ", " + hi_.to_string() + ")";
}

}  // namespace benford::hiprec
