#include "benfordlab/diophantine/diophantine.hpp"

#include <set>
#include <stdexcept>

#include "benfordlab/errors.hpp"
#include "benfordlab/hiprec/factor.hpp"
#include "benfordlab/hiprec/log.hpp"

namespace benford::diophantine {
namespace {

using hiprec::FactoredRational;
using hiprec::MpzLess;

std::string power_string(const mpq_class& base, long e) {
  const std::string b = base.get_den() == 1 ? base.get_str() : "(" + base.get_str() + ")";
  return b + "^" + std::to_string(e);
}

mpq_class rational_pow(const mpq_class& q, long e) {
  mpz_class num, den;
  const unsigned long u = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), u);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), u);
  mpq_class r = e < 0 ? mpq_class(den, num) : mpq_class(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<PowerSolution> solve_power_equation(const mpq_class& a, const mpq_class& target, long radix) {
  if (radix < 2) throw std::invalid_argument("radix must be >= 2");
  if (a <= 0 || target <= 0) throw std::invalid_argument("base and target must be positive");
  if (hiprec::is_log_rational(a, radix)) {
    throw RationalLog("log_" + std::to_string(radix) + "(" + a.get_str() + ") is rational");
  }
  const FactoredRational fa(a);
  const FactoredRational ft(target);
  const FactoredRational fr{mpq_class(radix)};
  std::set<mpz_class, MpzLess> primes;
  for (const auto* f : {&fa, &ft, &fr}) {
    for (const auto& [p, e] : f->exponents()) primes.insert(p);
  }
  const std::vector<mpz_class> ps(primes.begin(), primes.end());

  // k A_p - m R_p = T_p; solve on the first nonsingular pair of primes.
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const mpz_class ap = fa.valuation(ps[i]), aq = fa.valuation(ps[j]);
      const mpz_class rp = fr.valuation(ps[i]), rq = fr.valuation(ps[j]);
      const mpz_class tp = ft.valuation(ps[i]), tq = ft.valuation(ps[j]);
      const mpz_class det = rp * aq - ap * rq;
      if (det == 0) continue;
      const mpz_class k_num = rp * tq - rq * tp;
      const mpz_class m_num = ap * tq - aq * tp;
      if (k_num % det != 0 || m_num % det != 0) return std::nullopt;
      const mpz_class k = k_num / det;
      const mpz_class m = m_num / det;
      if (k == 0 || !k.fits_slong_p() || !m.fits_slong_p()) return std::nullopt;
      const PowerSolution s{k.get_si(), m.get_si()};
      if (rational_pow(a, s.k) != target * rational_pow(mpq_class(radix), s.m)) return std::nullopt;
      return s;
    }
  }
  throw std::logic_error("solve_power_equation: exponent system is singular");
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Unbounded: return "unbounded";
    case Verdict::Bounded: return "bounded";
    case Verdict::LowerPerfectHit: return "lower-perfect-hit";
    case Verdict::UpperPerfectHit: return "upper-perfect-hit";
  }
  return "unknown";
}

Classification classify(const mpq_class& a, long d, long radix) {
  if (radix < 3) throw std::invalid_argument("classify: radix must be >= 3");
  if (d < 1 || d >= radix) throw std::invalid_argument("classify: digit outside 1..radix-1");
  Classification c;
  c.base = a;
  c.base.canonicalize();
  c.digit = d;
  c.radix = radix;
  const mpq_class target(d + 1, d);
  const std::optional<PowerSolution> s = solve_power_equation(c.base, target, radix);
  if (!s) return c;
  c.k = s->k;
  c.m = s->m;
  c.verdict = Verdict::Bounded;
  if (s->k == 1 && d == 1) c.verdict = Verdict::LowerPerfectHit;
  if (s->k == -1 && d == radix - 1) c.verdict = Verdict::UpperPerfectHit;
  c.witness = power_string(c.base, s->k) + " = (" + std::to_string(d + 1) + "/" + std::to_string(d) + ")*" +
              std::to_string(radix) + "^" + std::to_string(s->m);
  return c;
}

std::vector<long> enumerate_bounded_bases(long d, long a_max, long radix) {
  if (a_max < 2) throw std::invalid_argument("enumerate_bounded_bases: a_max must be >= 2");
  std::vector<long> out;
  for (long a = 2; a <= a_max; ++a) {
    if (a % radix == 0 || hiprec::is_log_rational(mpq_class(a), radix)) continue;
    if (classify(mpq_class(a), d, radix).bounded()) out.push_back(a);
  }
  return out;
}

}  // namespace benford::diophantine
