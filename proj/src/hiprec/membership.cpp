#include "benfordlab/hiprec/membership.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "benfordlab/hiprec/precision.hpp"

namespace benford::hiprec {
namespace {

constexpr unsigned kCheckBits = 128;

mpz_class pow2(unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// Distance between a and b on the circle Z / 2^bits.
mpz_class circular_distance(const mpz_class& a, const mpz_class& b, unsigned bits) {
  mpz_class d = a - b;
  mpz_fdiv_r_2exp(d.get_mpz_t(), d.get_mpz_t(), bits);
  mpz_class other = pow2(bits) - d;
  return d < other ? d : other;
}

}  // namespace

Membership resolve_membership(const FixedFrac& x, const UnitInterval& interval,
                              const ExactReal& alpha) {
  if (interval.empty()) return Membership::Outside;
  if (interval.lo().as_rational() == mpq_class(0) && interval.hi().as_rational() == mpq_class(1)) {
    return Membership::Inside;
  }
  const PrecReal lo = interval.lo().realize(x.bits);
  const PrecReal hi = interval.hi().realize(x.bits);
  const bool near_lo = circular_distance(x.frac, lo.scaled(), x.bits) <= x.err_ulp + lo.err_ulp();
  const bool near_hi = circular_distance(x.frac, hi.scaled(), x.bits) <= x.err_ulp + hi.err_ulp();
  if (!near_lo && !near_hi) {
    return lo.scaled() <= x.frac && x.frac < hi.scaled() ? Membership::Inside : Membership::Outside;
  }
  const unsigned start = 2 * x.bits;
  const ExactReal frac = certified_frac(alpha * to_mpz(x.index), start);
  const bool inside = certified_sign(frac - interval.lo(), start) >= 0 &&
                      certified_sign(frac - interval.hi(), start) < 0;
  return inside ? Membership::Inside : Membership::Outside;
}

BoundaryClassifier::BoundaryClassifier(ExactReal alpha, std::vector<ExactReal> boundaries,
                                       std::uint64_t n_max, unsigned bits)
    : alpha_(std::move(alpha)), boundaries_(std::move(boundaries)), n_max_(n_max) {
  if (n_max == 0) throw std::invalid_argument("BoundaryClassifier: n_max must be positive");
  if (bits != 0 && bits < 64) throw std::invalid_argument("BoundaryClassifier: bits must be >= 64");
  bits_ = bits != 0 ? bits : default_bits(n_max);
  for (std::size_t i = 0; i < boundaries_.size(); ++i) {
    const ExactReal& prev = i == 0 ? ExactReal(0) : boundaries_[i - 1];
    if (certified_sign(boundaries_[i] - prev, kCheckBits) <= 0 ||
        certified_sign(boundaries_[i] - ExactReal(1), kCheckBits) >= 0) {
      throw std::invalid_argument("BoundaryClassifier: boundaries must increase strictly inside (0, 1)");
    }
  }
  alpha_value_ = alpha_.realize(bits_);
  boundary_scaled_.reserve(boundaries_.size());
  for (const ExactReal& b : boundaries_) {
    const PrecReal r = b.realize(bits_);
    boundary_scaled_.push_back(r.scaled());
    if (r.err_ulp() > boundary_err_) boundary_err_ = r.err_ulp();
  }

  bucket_.assign(std::size_t{1} << 16, kCheck);
  const mpz_class tolerance = alpha_value_.err_ulp() * to_mpz(n_max_) + boundary_err_ + 1;
  if (boundaries_.size() >= kCheck || tolerance >= pow2(bits_ - 64)) return;

  std::vector<std::uint64_t> tops;
  for (const mpz_class& b : boundary_scaled_) {
    mpz_class t;
    mpz_fdiv_q_2exp(t.get_mpz_t(), b.get_mpz_t(), bits_ - 64);
    tops.push_back(mpz_get_ui(t.get_mpz_t()));
  }
  std::vector<bool> check(bucket_.size(), false);
  check.front() = check.back() = true;
  for (std::uint64_t t : tops) {
    const std::uint64_t lo = t < 2 ? 0 : t - 2;
    const std::uint64_t hi = t > ~std::uint64_t{0} - 2 ? ~std::uint64_t{0} : t + 2;
    for (std::uint64_t j = lo >> 48; j <= hi >> 48; ++j) check[j] = true;
  }
  std::size_t below = 0;
  for (std::size_t j = 0; j < bucket_.size(); ++j) {
    const std::uint64_t start = static_cast<std::uint64_t>(j) << 48;
    while (below < tops.size() && tops[below] < start) ++below;
    if (!check[j]) bucket_[j] = static_cast<std::uint16_t>(below);
  }
}

void BoundaryClassifier::check_range(std::uint64_t n_start, std::uint64_t count) const {
  if (n_start == 0 || n_start > n_max_ || count > n_max_ - n_start + 1) {
    throw std::invalid_argument("BoundaryClassifier: index outside 1..n_max");
  }
}

unsigned BoundaryClassifier::classify_limbs(std::uint64_t n,
                                            std::span<const std::uint64_t> acc) const {
  const mpz_class x = from_limbs(acc, bits_);
  const mpz_class err_x = alpha_value_.err_ulp() * to_mpz(n);
  if (x <= err_x || pow2(bits_) - x <= err_x) return cell_exact(n);
  const auto it = std::upper_bound(boundary_scaled_.begin(), boundary_scaled_.end(), x);
  const mpz_class tolerance = err_x + boundary_err_;
  if (it != boundary_scaled_.end() && *it - x <= tolerance) return cell_exact(n);
  if (it != boundary_scaled_.begin() && x - *(it - 1) <= tolerance) return cell_exact(n);
  return static_cast<unsigned>(it - boundary_scaled_.begin());
}

unsigned BoundaryClassifier::cell_exact(std::uint64_t n) const {
  const unsigned start = bits_ + 64;
  const ExactReal frac = certified_frac(alpha_ * to_mpz(n), start);
  std::size_t lo = 0;
  std::size_t hi = boundaries_.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (certified_sign(frac - boundaries_[mid], start) >= 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return static_cast<unsigned>(lo);
}

unsigned BoundaryClassifier::cell(std::uint64_t n) const {
  unsigned out = 0;
  for_each(n, 1, [&](std::uint64_t, unsigned c) { out = c; });
  return out;
}

void BoundaryClassifier::count_cells(std::uint64_t n_start, std::uint64_t count,
                                     std::span<std::uint64_t> counts) const {
  if (counts.size() < cell_count()) throw std::invalid_argument("count_cells: counts too short");
  for_each(n_start, count, [&](std::uint64_t, unsigned c) { ++counts[c]; });
}

}  // namespace benford::hiprec
