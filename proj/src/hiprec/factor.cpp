#include "benfordlab/hiprec/factor.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace benford::hiprec {
namespace {

constexpr unsigned long kTrialLimit = 1u << 16;

mpz_class pollard_rho(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto f = [&](const mpz_class& v) {
      mpz_class r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      mpz_class diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned long, MpzLess>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    out[n] += 1;
    return;
  }
  const mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<mpz_class, unsigned long, MpzLess> factor_integer(const mpz_class& n) {
  if (n <= 0) throw std::invalid_argument("factor_integer: argument must be positive");
  std::map<mpz_class, unsigned long, MpzLess> out;
  mpz_class rest = n;
  for (unsigned long p = 2; p < kTrialLimit && rest > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p) == 0) continue;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    out[mpz_class(p)] = e;
    if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) break;
  }
  factor_into(rest, out);
  return out;
}

FactoredRational::FactoredRational(const mpq_class& q) {
  if (q <= 0) throw std::invalid_argument("FactoredRational: rational must be positive");
  for (const auto& [p, e] : factor_integer(q.get_num())) add(p, e);
  for (const auto& [p, e] : factor_integer(q.get_den())) add(p, -mpz_class(e));
}

mpz_class FactoredRational::valuation(const mpz_class& p) const {
  auto it = exponents_.find(p);
  return it == exponents_.end() ? mpz_class(0) : it->second;
}

mpq_class FactoredRational::to_rational() const {
  mpz_class num = 1, den = 1;
  for (const auto& [p, e] : exponents_) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), mpz_class(abs(e)).get_ui());
    if (e > 0) num *= pw; else den *= pw;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

void FactoredRational::add(const mpz_class& p, const mpz_class& e) {
  if (e == 0) return;
  auto [it, inserted] = exponents_.try_emplace(p, e);
  if (!inserted) {
    it->second += e;
    if (it->second == 0) exponents_.erase(it);
  }
}

FactoredRational& FactoredRational::operator*=(const FactoredRational& rhs) {
  for (const auto& [p, e] : rhs.exponents_) add(p, e);
  return *this;
}

FactoredRational FactoredRational::pow(const mpz_class& k) const {
  FactoredRational r;
  if (k == 0) return r;
  for (const auto& [p, e] : exponents_) r.exponents_.emplace(p, e * k);
  return r;
}

std::string FactoredRational::to_string() const {
  if (exponents_.empty()) return "1";
  std::string s;
  for (const auto& [p, e] : exponents_) {
    if (!s.empty()) s += " * ";
    s += p.get_str();
    if (e != 1) s += "^" + e.get_str();
  }
  return s;
}

bool log_ratio(const FactoredRational& r, const FactoredRational& radix, mpq_class* out) {
  if (radix.is_one()) throw std::invalid_argument("log_ratio: radix must exceed 1");
  // every prime of r must divide radix
  for (const auto& [p, e] : r.exponents()) {
    if (radix.valuation(p) == 0) return false;
  }
  std::optional<mpq_class> ratio;
  for (const auto& [p, e] : radix.exponents()) {
    mpq_class t(r.valuation(p), e);
    t.canonicalize();
    if (!ratio) {
      ratio = t;
    } else if (*ratio != t) {
      return false;
    }
  }
  if (out != nullptr) *out = *ratio;
  return true;
}

}  // namespace benford::hiprec
