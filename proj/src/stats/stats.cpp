#include "benfordlab/stats/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "benfordlab/errors.hpp"

namespace benford::stats {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 isqrt(u128 v) {
  auto x = static_cast<u128>(std::sqrt(static_cast<long double>(v)));
  while (x * x > v) --x;
  while ((x + 1) * (x + 1) <= v) ++x;
  return x;
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Sign of a sqrt(d) - b, exactly.
int sign_root_minus(i128 a, i128 b, i128 d) {
  if (a >= 0 && b <= 0) return (a == 0 && b == 0) ? 0 : 1;
  if (a <= 0 && b >= 0) return -1;
  const u128 lhs = static_cast<u128>(a < 0 ? -a : a) * static_cast<u128>(a < 0 ? -a : a) * static_cast<u128>(d);
  const u128 rhs = static_cast<u128>(b < 0 ? -b : b) * static_cast<u128>(b < 0 ? -b : b);
  const int mag = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  return a > 0 ? mag : -mag;
}

void check_quadratic(const QuadraticIrrational& x, bool allow_rational) {
  if (x.d < 2 || mpz_perfect_square_p(mpz_class(static_cast<long>(x.d)).get_mpz_t()) != 0) {
    throw std::invalid_argument("quadratic irrational: D must be a positive nonsquare");
  }
  if (x.r <= 0) throw std::invalid_argument("quadratic irrational: r must be positive");
  if (!allow_rational && x.q == 0) throw std::invalid_argument("quadratic irrational: q must be nonzero");
}

long double value_of(const QuadraticIrrational& x) {
  return (static_cast<long double>(x.p) + static_cast<long double>(x.q) * std::sqrt(static_cast<long double>(x.d))) /
         static_cast<long double>(x.r);
}

}  // namespace

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw std::invalid_argument("histogram: empty sample");
  if (bins < 2) throw std::invalid_argument("histogram: need at least 2 bins");
  Histogram h;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  h.observed_min = *lo_it;
  h.observed_max = *hi_it;
  double lo = h.observed_min;
  double hi = h.observed_max;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto bin = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
    bin = std::min(bin, bins - 1);
    // Rounding in the scaling can land one bin off near an edge.
    while (bin > 0 && v < h.edges[bin]) --bin;
    while (bin + 1 < bins && v >= h.edges[bin + 1]) ++bin;
    ++h.counts[bin];
  }
  h.total = values.size();
  return h;
}

Histogram histogram(const ErrorSeries& series, std::size_t bins) {
  std::vector<double> values;
  values.reserve(series.size());
  for (const Q64& v : series.values) values.push_back(v.to_double());
  return histogram(values, bins);
}

Reservoir::Reservoir(std::size_t capacity, std::uint64_t seed) : capacity_(capacity), rng_(seed) {
  if (capacity == 0) throw std::invalid_argument("Reservoir: capacity must be positive");
}

void Reservoir::add(long double x) {
  ++seen_;
  if (kept_.size() < capacity_) {
    kept_.push_back(x);
    return;
  }
  const std::uint64_t j = std::uniform_int_distribution<std::uint64_t>(0, seen_ - 1)(rng_);
  if (j < capacity_) kept_[j] = x;
}

std::vector<long double> Reservoir::sorted() const {
  std::vector<long double> out = kept_;
  std::sort(out.begin(), out.end());
  return out;
}

double ks_distance(std::vector<long double> sample, const std::function<long double(long double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<long double>(sample.size());
  long double d = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const long double f = cdf(sample[i]);
    d = std::max({d, f - static_cast<long double>(i) / n, static_cast<long double>(i + 1) / n - f});
  }
  return static_cast<double>(std::clamp(d, 0.0L, 1.0L));
}

double ks_distance(std::vector<long double> sample, const closedform::UniformMixture& reference) {
  return ks_distance(std::move(sample), [&](long double x) { return closedform::mixture_cdf(reference, x); });
}

long double standard_normal_cdf(long double x) { return 0.5L * std::erfc(-x / std::sqrt(2.0L)); }

std::vector<long double> sample_values(const ErrorSeries& series) {
  Reservoir r;
  for (const Q64& v : series.values) r.add(static_cast<long double>(v.to_double()));
  return r.sorted();
}

std::vector<RecordHit> record_hits(const ErrorSeries& series) {
  if (series.stride != 1) throw StrideTooCoarse("record hits need every index (stride 1)");
  std::vector<RecordHit> out;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Q64 v = series.values[i];
    const Q64 a = v < Q64() ? -v : v;
    if (out.empty() || a < out.back().abs_error) out.push_back({series.indices[i], a});
  }
  return out;
}

std::vector<double> lindeberg_ratios(const std::vector<mpz_class>& quotients) {
  if (quotients.size() < 2) throw std::invalid_argument("lindeberg_ratios: need at least 2 quotients");
  std::vector<double> out;
  mpz_class sum = 0;
  for (std::size_t k = 1; k < quotients.size(); ++k) {
    const mpz_class sq = quotients[k] * quotients[k];
    sum += sq;
    out.push_back(mpq_class(sq, sum).get_d());
  }
  return out;
}

std::vector<double> lindeberg_ratios(const hiprec::CFExpansion& cf) {
  if (cf.certified < 2) throw std::invalid_argument("lindeberg_ratios: need at least 2 certified quotients");
  return lindeberg_ratios(std::vector<mpz_class>(cf.quotients.begin(),
                                                 cf.quotients.begin() + static_cast<std::ptrdiff_t>(cf.certified)));
}

NormalityReport beck_clt_experiment(const QuadraticIrrational& alpha, const mpq_class& s, std::uint64_t n,
                                    std::size_t samples) {
  if (!s.get_num().fits_slong_p() || !s.get_den().fits_slong_p()) {
    throw std::invalid_argument("beck: s too large");
  }
  return beck_clt_experiment(alpha, QuadraticIrrational{s.get_num().get_si(), 0, alpha.d, s.get_den().get_si()}, n,
                             samples);
}

NormalityReport beck_clt_experiment(const QuadraticIrrational& alpha, const QuadraticIrrational& s,
                                    std::uint64_t n, std::size_t samples) {
  check_quadratic(alpha, false);
  check_quadratic(s, true);
  if (s.d != alpha.d && s.q != 0) throw std::invalid_argument("beck: s must use the same D as alpha");
  if (n < 2) throw std::invalid_argument("beck: N must be at least 2");
  const i128 p = alpha.p, q = alpha.q, d = alpha.d, r = alpha.r;
  const i128 sp = s.p, sq = s.q, sr = s.r;
  if (sign_root_minus(sq, -sp, d) < 0 || sign_root_minus(sq, sr - sp, d) > 0) {
    throw std::invalid_argument("beck: s must lie in [0, 1]");
  }
  // All intermediate magnitudes are below these bounds; their squares times
  // D must fit in 127 bits.
  const mpz_class nz = static_cast<unsigned long>(n);
  const auto mz = [](i128 v) { return mpz_class(static_cast<long>(v < 0 ? -v : v)); };
  const mpz_class root_d = mpz_class(static_cast<long>(std::ceil(std::sqrt(static_cast<double>(alpha.d))))) + 1;
  const mpz_class a_bound = mz(sr) * nz * mz(q) + mz(r) * mz(sq);
  const mpz_class fl_bound = nz * (mz(p) + mz(q) * root_d) + 1;
  const mpz_class b_bound = mz(r) * mz(sp) + mz(sr) * (mz(r) * fl_bound + nz * mz(p));
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 2, 126);
  if (a_bound * a_bound * mz(d) >= limit || b_bound * b_bound >= limit) {
    throw std::invalid_argument("beck: inputs too large for exact 128-bit arithmetic");
  }

  NormalityReport rep;
  rep.n = n;
  // Kesten's condition for [0, s): s - k alpha in Z for some k != 0.
  if (s.q == 0) {
    rep.bounded_regime = sp == 0 || sp == sr;
  } else if ((sq * r) % (q * sr) == 0) {
    const i128 k = (sq * r) / (q * sr);
    if (k != 0 && (sp * r - k * p * sr) % (sr * r) == 0) {
      rep.bounded_regime = true;
      rep.bounded_k = static_cast<long>(k);
    }
  }

  const long double s_value = value_of(s);
  Reservoir reservoir(std::max<std::size_t>(1, samples));
  long double mean = 0, m2 = 0;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const i128 ni = static_cast<i128>(i);
    const i128 nq = ni * q;
    const auto root = static_cast<i128>(isqrt(static_cast<u128>(nq < 0 ? -nq : nq) *
                                               static_cast<u128>(nq < 0 ? -nq : nq) * static_cast<u128>(d)));
    const i128 floor_y = nq >= 0 ? root : -root - 1;
    const i128 fl = floor_div(ni * p + floor_y, r);
    const i128 a = sr * nq - r * sq;
    const i128 b = r * sp + sr * r * fl - sr * ni * p;
    if (sign_root_minus(a, b, d) < 0) ++hits;
    const long double delta = static_cast<long double>(hits) - static_cast<long double>(i) * s_value;
    const long double dm = delta - mean;
    mean += dm / static_cast<long double>(i);
    m2 += dm * (delta - mean);
    rep.max_abs = std::max(rep.max_abs, static_cast<double>(std::fabs(delta)));
    reservoir.add(delta);
  }
  const long double var = m2 / static_cast<long double>(n);
  const long double log_n = std::log(static_cast<long double>(n));
  rep.mean = static_cast<double>(mean);
  rep.std = static_cast<double>(std::sqrt(var));
  rep.mean_over_log_n = static_cast<double>(mean / log_n);
  rep.var_over_log_n = static_cast<double>(var / log_n);
  std::vector<long double> z = reservoir.sorted();
  rep.samples = z.size();
  if (var > 0) {
    const long double sd = std::sqrt(var);
    for (long double& v : z) v = (v - mean) / sd;
    rep.ks_vs_normal = ks_distance(std::move(z), standard_normal_cdf);
  } else {
    rep.ks_vs_normal = 1;
  }
  return rep;
}

}  // namespace benford::stats
