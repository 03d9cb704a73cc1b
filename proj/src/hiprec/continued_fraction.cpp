#include "benfordlab/hiprec/continued_fraction.hpp"

namespace benford::hiprec {

std::vector<std::pair<mpz_class, mpz_class>> convergents_of(const std::vector<mpz_class>& quotients) {
  std::vector<std::pair<mpz_class, mpz_class>> out;
  out.reserve(quotients.size());
  mpz_class p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  for (const mpz_class& a : quotients) {
    mpz_class p = a * p_prev + p_prev2;
    mpz_class q = a * q_prev + q_prev2;
    out.emplace_back(p, q);
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
  }
  return out;
}

CFExpansion continued_fraction(const PrecReal& alpha, std::size_t max_terms) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, alpha.bits());
  mpq_class lo(alpha.scaled() - alpha.err_ulp(), den);
  mpq_class hi(alpha.scaled() + alpha.err_ulp(), den);
  lo.canonicalize();
  hi.canonicalize();

  CFExpansion cf;
  while (max_terms == 0 || cf.quotients.size() < max_terms) {
    mpz_class a_lo, a_hi;
    mpz_fdiv_q(a_lo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(a_hi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (a_lo != a_hi) break;
    mpq_class r_lo = lo - a_lo;
    mpq_class r_hi = hi - a_hi;
    // A remainder of 0 means the expansion might end here for some point of
    // the interval; the quotient itself is not certified beyond that.
    if (sgn(r_lo) == 0 || sgn(r_hi) == 0) break;
    cf.quotients.push_back(a_lo);
    lo = 1 / r_hi;
    hi = 1 / r_lo;
  }
  cf.certified = cf.quotients.size();
  cf.convergents = convergents_of(cf.quotients);
  return cf;
}

}  // namespace benford::hiprec
