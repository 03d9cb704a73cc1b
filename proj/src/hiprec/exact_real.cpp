#include "benfordlab/hiprec/exact_real.hpp"

#include <algorithm>
#include <stdexcept>

#include "benfordlab/errors.hpp"
#include "benfordlab/hiprec/log.hpp"

namespace benford::hiprec {

ExactReal ExactReal::rational(const mpq_class& q) {
  ExactReal r;
  r.rational_ = q;
  r.rational_.canonicalize();
  return r;
}

ExactReal ExactReal::log(const mpq_class& arg, long radix) {
  if (arg <= 0) throw std::invalid_argument("ExactReal::log: argument must be positive");
  if (radix < 2) throw std::invalid_argument("ExactReal::log: radix must be >= 2");
  ExactReal r;
  mpq_class a = arg;
  a.canonicalize();
  if (a == 1) return r;
  r.radix_ = radix;
  r.logs_.emplace(a, 1);
  return r;
}

ExactReal ExactReal::sqrt(const mpq_class& coeff, std::uint64_t radicand) {
  if (mpz_perfect_square_p(mpz_class(radicand).get_mpz_t()) != 0) {
    throw std::invalid_argument("ExactReal::sqrt: radicand must not be a perfect square");
  }
  ExactReal r;
  if (coeff == 0) return r;
  r.sqrt_coeff_ = coeff;
  r.sqrt_coeff_.canonicalize();
  r.radicand_ = radicand;
  return r;
}

ExactReal ExactReal::operator-() const {
  ExactReal r = *this;
  r.rational_ = -r.rational_;
  for (auto& [arg, c] : r.logs_) c = -c;
  r.sqrt_coeff_ = -r.sqrt_coeff_;
  return r;
}

void ExactReal::check_compatible(const ExactReal& rhs) const {
  if (!logs_.empty() && !rhs.logs_.empty() && radix_ != rhs.radix_) {
    throw std::invalid_argument("ExactReal: mixing logarithms of different radices");
  }
  if (sqrt_coeff_ != 0 && rhs.sqrt_coeff_ != 0 && radicand_ != rhs.radicand_) {
    throw std::invalid_argument("ExactReal: mixing square roots of different radicands");
  }
}

ExactReal& ExactReal::operator+=(const ExactReal& rhs) {
  check_compatible(rhs);
  rational_ += rhs.rational_;
  if (!rhs.logs_.empty()) radix_ = rhs.radix_;
  for (const auto& [arg, c] : rhs.logs_) {
    auto [it, inserted] = logs_.try_emplace(arg, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) logs_.erase(it);
    }
  }
  if (logs_.empty()) radix_ = 0;
  if (rhs.sqrt_coeff_ != 0) {
    radicand_ = rhs.radicand_;
    sqrt_coeff_ += rhs.sqrt_coeff_;
  }
  if (sqrt_coeff_ == 0) radicand_ = 0;
  return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& rhs) { return *this += -rhs; }

ExactReal& ExactReal::operator*=(const mpz_class& k) {
  if (k == 0) {
    *this = ExactReal();
    return *this;
  }
  rational_ *= k;
  for (auto& [arg, c] : logs_) c *= k;
  sqrt_coeff_ *= k;
  return *this;
}

PrecReal ExactReal::realize(unsigned bits) const {
  PrecReal sum = PrecReal::from_rational(rational_, bits);
  for (const auto& [arg, c] : logs_) {
    sum += log_radix_cached(arg, radix_, bits) * c;
  }
  if (sqrt_coeff_ != 0) {
    // |u| sqrt(D) 2^bits / v: floor(isqrt(u^2 D 4^bits)) then floor division by v
    const mpz_class& u = sqrt_coeff_.get_num();
    const mpz_class& v = sqrt_coeff_.get_den();
    mpz_class radicand = u * u * mpz_class(radicand_);
    mpz_mul_2exp(radicand.get_mpz_t(), radicand.get_mpz_t(), 2 * static_cast<mp_bitcnt_t>(bits));
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
    mpz_fdiv_q(root.get_mpz_t(), root.get_mpz_t(), v.get_mpz_t());
    if (u < 0) root = -root;
    sum += PrecReal(root, bits, 2);
  }
  return sum;
}

std::optional<mpq_class> ExactReal::as_rational() const {
  if (sqrt_coeff_ != 0) return std::nullopt;
  if (logs_.empty()) return rational_;
  FactoredRational product;
  for (const auto& [arg, c] : logs_) product *= FactoredRational(arg).pow(c);
  mpq_class t;
  if (!log_ratio(product, FactoredRational(mpq_class(radix_)), &t)) return std::nullopt;
  return mpq_class(rational_ + t);
}

unsigned ExactReal::coefficient_bits() const {
  std::size_t b = 0;
  for (const auto& [arg, c] : logs_) b = std::max(b, mpz_sizeinbase(c.get_mpz_t(), 2));
  if (sqrt_coeff_ != 0) {
    b = std::max(b, mpz_sizeinbase(sqrt_coeff_.get_num_mpz_t(), 2));
  }
  return static_cast<unsigned>(b);
}

std::string ExactReal::to_string() const {
  std::string s;
  auto append = [&s](const mpq_class& coeff, const std::string& what) {
    if (coeff == 0) return;
    mpq_class mag = abs(coeff);
    if (s.empty()) {
      if (coeff < 0) s += "-";
    } else {
      s += coeff < 0 ? " - " : " + ";
    }
    if (what.empty()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += what;
    }
  };
  append(rational_, "");
  for (const auto& [arg, c] : logs_) {
    append(mpq_class(c), "log" + std::to_string(radix_) + "(" + arg.get_str() + ")");
  }
  append(sqrt_coeff_, "sqrt(" + std::to_string(radicand_) + ")");
  return s.empty() ? "0" : s;
}

int certified_sign(const ExactReal& x, unsigned start_bits) {
  if (!x.has_logs() && x.as_rational()) return sgn(*x.as_rational());
  // large coefficients amplify the realization error; keep 64 bits beyond them
  const unsigned base = std::max({start_bits, 64u, 64u + x.coefficient_bits()});
  bool exact_checked = false;
  for (int i = 0; i <= kMaxEscalations; ++i) {
    const PrecReal v = x.realize(base << i);
    if (int s = v.certain_sign(); s != 0) return s;
    if (!exact_checked) {
      if (auto q = x.as_rational()) return sgn(*q);
      exact_checked = true;
    }
  }
  throw AmbiguityBudgetExceeded("sign of " + x.to_string());
}

mpz_class certified_floor(const ExactReal& x, unsigned start_bits) {
  mpz_class f = x.realize(std::max({start_bits, 64u, 64u + x.coefficient_bits()})).int_part();
  while (certified_sign(x - ExactReal::rational(mpq_class(f)), start_bits) < 0) f -= 1;
  while (certified_sign(x - ExactReal::rational(mpq_class(f + 1)), start_bits) >= 0) f += 1;
  return f;
}

ExactReal certified_frac(const ExactReal& x, unsigned start_bits) {
  return x - ExactReal::rational(mpq_class(certified_floor(x, start_bits)));
}

}  // namespace benford::hiprec
