#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "benfordlab/hiprec/prec_real.hpp"

namespace benford::hiprec {

// Certified continued-fraction prefix [a0; a1, a2, ...] of a real known only
// up to its error interval. Every quotient listed is correct for every real
// in the interval, so certified == quotients.size().
struct CFExpansion {
  std::vector<mpz_class> quotients;
  // (p_i, q_i) with p_i / q_i = [a0; ..., a_i].
  std::vector<std::pair<mpz_class, mpz_class>> convergents;
  std::size_t certified = 0;
};

// Runs the Gauss map on both ends of [alpha - err, alpha + err] and emits
// quotients while they agree. max_terms == 0 means no limit.
CFExpansion continued_fraction(const PrecReal& alpha, std::size_t max_terms = 0);

// Convergents of an explicit quotient list.
std::vector<std::pair<mpz_class, mpz_class>> convergents_of(const std::vector<mpz_class>& quotients);

}  // namespace benford::hiprec
