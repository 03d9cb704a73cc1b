#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace benford::hiprec {

struct MpzLess {
  bool operator()(const mpz_class& a, const mpz_class& b) const { return cmp(a, b) < 0; }
};

// Prime factorization of a positive integer; exponents are positive.
std::map<mpz_class, unsigned long, MpzLess> factor_integer(const mpz_class& n);

// A positive rational p/q kept as prime -> exponent (negative exponents come
// from the denominator). Exponents are never zero.
class FactoredRational {
 public:
  using Exponents = std::map<mpz_class, mpz_class, MpzLess>;

  FactoredRational() = default;
  explicit FactoredRational(const mpq_class& q);

  const Exponents& exponents() const { return exponents_; }
  // v_p of the rational; zero for primes not present.
  mpz_class valuation(const mpz_class& p) const;
  mpq_class to_rational() const;
  bool is_one() const { return exponents_.empty(); }

  FactoredRational& operator*=(const FactoredRational& rhs);
  FactoredRational pow(const mpz_class& k) const;

  std::string to_string() const;

 private:
  void add(const mpz_class& p, const mpz_class& e);

  Exponents exponents_;
};

// Exact test: is log_radix(r) rational? Returns it when so. radix >= 2.
// log_radix(r) = t is rational iff v_p(r) = t * v_p(radix) for every prime p.
bool log_ratio(const FactoredRational& r, const FactoredRational& radix, mpq_class* out);

}  // namespace benford::hiprec
