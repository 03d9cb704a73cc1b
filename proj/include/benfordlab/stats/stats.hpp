#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "benfordlab/closedform/closedform.hpp"
#include "benfordlab/digitcount/digitcount.hpp"
#include "benfordlab/hiprec/continued_fraction.hpp"
#include "benfordlab/hiprec/q64.hpp"

namespace benford::stats {

using digitcount::ErrorSeries;
using hiprec::Q64;

struct Histogram {
  std::vector<double> edges;  // bins + 1 increasing edges
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  double observed_min = 0;
  double observed_max = 0;
};

// Uniform bins over [min, max]; right-open except the last. A constant
// sample gets the single span [v - 1/2, v + 1/2].
Histogram histogram(std::span<const double> values, std::size_t bins);
Histogram histogram(const ErrorSeries& series, std::size_t bins);

// Uniform reservoir sample (algorithm R) with a fixed seed, so the kept
// sample depends only on the input order. Keeps everything up to capacity.
class Reservoir {
 public:
  static constexpr std::size_t kDefaultCapacity = 1000000;

  explicit Reservoir(std::size_t capacity = kDefaultCapacity, std::uint64_t seed = 0x5eed);
  void add(long double x);
  std::uint64_t seen() const { return seen_; }
  // The kept values in ascending order.
  std::vector<long double> sorted() const;

 private:
  std::size_t capacity_;
  std::uint64_t seen_ = 0;
  std::vector<long double> kept_;
  std::mt19937_64 rng_;
};

// sup |F_n - F| over a sample (sorted in place) against a continuous CDF.
double ks_distance(std::vector<long double> sample, const std::function<long double(long double)>& cdf);
double ks_distance(std::vector<long double> sample, const closedform::UniformMixture& reference);

long double standard_normal_cdf(long double x);

// Every recorded value of the series, through a default-capacity reservoir.
std::vector<long double> sample_values(const ErrorSeries& series);

struct RecordHit {
  std::uint64_t n = 0;
  Q64 abs_error;
};

// Indices where |E_d(n)| drops below every earlier value; n = 1 is always a
// record. Throws StrideTooCoarse unless the series has stride 1.
std::vector<RecordHit> record_hits(const ErrorSeries& series);

// r_k = a_k^2 / sum_{i=1..k} a_i^2 over the certified quotients, a_0 excluded.
// Throws std::invalid_argument with fewer than 2 certified quotients.
std::vector<double> lindeberg_ratios(const hiprec::CFExpansion& cf);
std::vector<double> lindeberg_ratios(const std::vector<mpz_class>& quotients);

// (p + q sqrt(D)) / r with D > 1 not a square, q != 0, r > 0.
struct QuadraticIrrational {
  std::int64_t p = 0;
  std::int64_t q = 1;
  std::int64_t d = 2;
  std::int64_t r = 1;
};

struct NormalityReport {
  std::uint64_t n = 0;
  std::uint64_t samples = 0;  // values used for the KS statistic
  double mean = 0;
  double std = 0;
  double max_abs = 0;
  double ks_vs_normal = 0;
  double mean_over_log_n = 0;
  double var_over_log_n = 0;
  // s = {k alpha} for some k != 0: the discrepancy stays bounded and no CLT
  // is expected.
  bool bounded_regime = false;
  long bounded_k = 0;
};

// Delta(n, alpha, [0, s)) for n = 1..N, with {n alpha} < s decided exactly
// in Z[sqrt D]. s = (s_p + s_q sqrt D) / s_r must lie in [0, 1] and share
// alpha's D (s_q = 0 for rational s). The KS statistic uses a reservoir of
// `samples` standardized values.
NormalityReport beck_clt_experiment(const QuadraticIrrational& alpha, const QuadraticIrrational& s,
                                    std::uint64_t n, std::size_t samples = Reservoir::kDefaultCapacity);
NormalityReport beck_clt_experiment(const QuadraticIrrational& alpha, const mpq_class& s, std::uint64_t n,
                                    std::size_t samples = Reservoir::kDefaultCapacity);

}  // namespace benford::stats
