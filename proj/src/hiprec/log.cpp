#include "benfordlab/hiprec/log.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "benfordlab/hiprec/factor.hpp"

namespace benford::hiprec {
namespace {

constexpr unsigned kGuardBits = 64;

// Fixed-point value with an error bound, both in units of 2^-w.
struct Approx {
  mpz_class value;
  mpz_class err;
};

mpz_class pow2(unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// atanh(u/v) * 2^w for 0 <= u < v, via the odd power series. Each truncated
// term is off by less than 3 ulps and the discarded tail is below 1 ulp.
Approx atanh_ratio(const mpz_class& u, const mpz_class& v, unsigned w) {
  Approx out{0, 0};
  if (u == 0) return out;
  const mpz_class u2 = u * u;
  const mpz_class v2 = v * v;
  mpz_class t = pow2(w) * u;
  mpz_fdiv_q(t.get_mpz_t(), t.get_mpz_t(), v.get_mpz_t());
  unsigned long terms = 0;
  for (unsigned long j = 0; t != 0; ++j) {
    mpz_class term;
    mpz_fdiv_q_ui(term.get_mpz_t(), t.get_mpz_t(), 2 * j + 1);
    out.value += term;
    t *= u2;
    mpz_fdiv_q(t.get_mpz_t(), t.get_mpz_t(), v2.get_mpz_t());
    ++terms;
  }
  out.err = 3 * terms + 2;
  return out;
}

Approx ln2_fixed(unsigned w) {
  // ln 2 = 18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749)
  const Approx a = atanh_ratio(1, 26, w);
  const Approx b = atanh_ratio(1, 4801, w);
  const Approx c = atanh_ratio(1, 8749, w);
  return {18 * a.value - 2 * b.value + 8 * c.value, 18 * a.err + 2 * b.err + 8 * c.err};
}

// ln(n) * 2^w for n >= 1: n = 2^e * y with y in [1/sqrt2, sqrt2], and
// ln y = 2 atanh((n - 2^e) / (n + 2^e)).
Approx ln_fixed(const mpz_class& n, unsigned w) {
  if (n <= 0) throw std::invalid_argument("ln of a non-positive integer");
  if (n == 1) return {0, 0};
  unsigned long e = mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
  mpz_class base = pow2(static_cast<unsigned>(e));
  if (2 * n * n > 4 * base * base) {  // y^2 > 2: round up to the next power
    ++e;
    base *= 2;
  }
  Approx result{0, 0};
  if (e != 0) {
    const Approx l2 = ln2_fixed(w);
    result.value = l2.value * e;
    result.err = l2.err * e;
  }
  const mpz_class num = n - base;
  const mpz_class den = n + base;
  Approx z = atanh_ratio(abs(num), den, w);
  if (num < 0) z.value = -z.value;
  result.value += 2 * z.value;
  result.err += 2 * z.err;
  return result;
}

}  // namespace

PrecReal ln_integer(const mpz_class& n, unsigned bits) {
  const Approx a = ln_fixed(n, bits + kGuardBits);
  return PrecReal(a.value, bits + kGuardBits, a.err).with_bits(bits);
}

bool is_log_rational(const mpq_class& a, long radix) {
  if (a <= 0) throw std::invalid_argument("is_log_rational: a must be positive");
  if (radix < 2) throw std::invalid_argument("is_log_rational: radix must be >= 2");
  return log_ratio(FactoredRational(a), FactoredRational(mpq_class(radix)), nullptr);
}

PrecReal log_radix(const mpq_class& a, long radix, unsigned bits) {
  if (a <= 0) throw std::invalid_argument("log_radix: a must be positive");
  if (radix < 2) throw std::invalid_argument("log_radix: radix must be >= 2");
  if (bits < 64) throw std::invalid_argument("log_radix: precision must be at least 64 bits");

  mpq_class exact;
  if (log_ratio(FactoredRational(a), FactoredRational(mpq_class(radix)), &exact)) {
    return PrecReal::from_rational(exact, bits);
  }

  const unsigned w = bits + kGuardBits;
  const Approx lp = ln_fixed(a.get_num(), w);
  const Approx lq = ln_fixed(a.get_den(), w);
  const Approx num{lp.value - lq.value, lp.err + lq.err};
  const Approx den = ln_fixed(mpz_class(radix), w);

  // alpha = num / den. With N = num + dn, D = den + dd (|dn| <= en, |dd| <= ed):
  // |N/D - n/d| <= (en + |N/D| * ed) / (D - ed), plus one ulp from the floor.
  mpz_class q = num.value * pow2(w);
  mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), den.value.get_mpz_t());
  const mpz_class denom_low = den.value - den.err;
  mpz_class abs_alpha_ceil = abs(q) + 1;
  mpz_cdiv_q_2exp(abs_alpha_ceil.get_mpz_t(), abs_alpha_ceil.get_mpz_t(), w);
  mpz_class err = (num.err + (abs_alpha_ceil + 1) * den.err) * pow2(w);
  mpz_cdiv_q(err.get_mpz_t(), err.get_mpz_t(), denom_low.get_mpz_t());
  err += 1;
  return PrecReal(q, w, err).with_bits(bits);
}

PrecReal log_radix_cached(const mpq_class& a, long radix, unsigned bits) {
  using Key = std::tuple<mpz_class, mpz_class, long, unsigned>;
  struct KeyLess {
    bool operator()(const Key& x, const Key& y) const {
      if (int c = cmp(std::get<0>(x), std::get<0>(y)); c != 0) return c < 0;
      if (int c = cmp(std::get<1>(x), std::get<1>(y)); c != 0) return c < 0;
      if (std::get<2>(x) != std::get<2>(y)) return std::get<2>(x) < std::get<2>(y);
      return std::get<3>(x) < std::get<3>(y);
    }
  };
  static std::mutex mutex;
  static std::map<Key, PrecReal, KeyLess> cache;

  Key key{a.get_num(), a.get_den(), radix, bits};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  PrecReal value = log_radix(a, radix, bits);
  std::lock_guard lock(mutex);
  return cache.emplace(std::move(key), std::move(value)).first->second;
}

}  // namespace benford::hiprec
