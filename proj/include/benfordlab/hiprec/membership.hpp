#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "benfordlab/hiprec/exact_real.hpp"
#include "benfordlab/hiprec/frac.hpp"
#include "benfordlab/hiprec/interval.hpp"

namespace benford::hiprec {

enum class Membership { Inside, Outside };

// Decides {n alpha} in I for x = frac_at(n, alpha realized at x.bits). Decided
// directly when x is farther than the combined error from both endpoints;
// otherwise n * alpha and the endpoints are re-realized at doubled precision
// (up to kMaxEscalations rounds, then AmbiguityBudgetExceeded). Exact ties are
// recognized symbolically and resolved by the half-open convention.
Membership resolve_membership(const FixedFrac& x, const UnitInterval& interval,
                              const ExactReal& alpha);

// Classifies {n alpha} against boundary points 0 < b_1 < ... < b_m < 1:
// cell(n) = #{j : b_j <= {n alpha}}. With the boundaries log_radix 2, ...,
// log_radix(radix - 1) the cell of n is D(a^n) - 1.
//
// The hot loop advances a left-aligned limb accumulator and classifies by the
// top 16 bits through a lookup table. Buckets that lie within three top-word
// units of a boundary (and the two buckets next to 0 mod 1) are marked for the
// slow path, which compares all limbs against the realized boundaries and
// falls back to certified exact comparison when the error intervals overlap.
// The table is only trusted when n_max * err(alpha) + err(b) < 2^(bits - 64),
// which the constructor checks.
class BoundaryClassifier {
 public:
  // bits == 0 selects default_bits(n_max).
  BoundaryClassifier(ExactReal alpha, std::vector<ExactReal> boundaries, std::uint64_t n_max,
                     unsigned bits = 0);

  std::size_t cell_count() const { return boundaries_.size() + 1; }
  unsigned bits() const { return bits_; }
  std::uint64_t n_max() const { return n_max_; }
  const ExactReal& alpha() const { return alpha_; }
  const PrecReal& alpha_value() const { return alpha_value_; }
  const std::vector<ExactReal>& boundaries() const { return boundaries_; }

  unsigned cell(std::uint64_t n) const;
  // Certified exact classification, independent of the fixed-point stream.
  unsigned cell_exact(std::uint64_t n) const;

  // visit(n, cell) for n = n_start .. n_start + count - 1, in order.
  template <class Visit>
  void for_each(std::uint64_t n_start, std::uint64_t count, Visit&& visit) const;

  // counts[cell] += 1 for each n in the segment.
  void count_cells(std::uint64_t n_start, std::uint64_t count,
                   std::span<std::uint64_t> counts) const;

 private:
  static constexpr std::uint16_t kCheck = 0xFFFF;

  unsigned classify_limbs(std::uint64_t n, std::span<const std::uint64_t> acc) const;
  void check_range(std::uint64_t n_start, std::uint64_t count) const;

  template <std::size_t L, class Visit>
  void run_fixed(std::uint64_t n_start, std::uint64_t count, Visit& visit) const;
  template <class Visit>
  void run_generic(std::uint64_t n_start, std::uint64_t count, Visit& visit) const;

  ExactReal alpha_;
  std::vector<ExactReal> boundaries_;
  std::uint64_t n_max_ = 0;
  unsigned bits_ = 0;
  PrecReal alpha_value_;
  std::vector<mpz_class> boundary_scaled_;
  mpz_class boundary_err_ = 0;
  std::vector<std::uint16_t> bucket_;
};

template <class Visit>
void BoundaryClassifier::for_each(std::uint64_t n_start, std::uint64_t count,
                                  Visit&& visit) const {
  if (count == 0) return;
  check_range(n_start, count);
  switch ((bits_ + 63) / 64) {
    case 2: run_fixed<2>(n_start, count, visit); break;
    case 3: run_fixed<3>(n_start, count, visit); break;
    case 4: run_fixed<4>(n_start, count, visit); break;
    case 5: run_fixed<5>(n_start, count, visit); break;
    default: run_generic(n_start, count, visit); break;
  }
}

template <std::size_t L, class Visit>
void BoundaryClassifier::run_fixed(std::uint64_t n_start, std::uint64_t count,
                                   Visit& visit) const {
  FracStream stream(alpha_value_, n_start);
  std::array<std::uint64_t, L> acc{};
  std::array<std::uint64_t, L> step{};
  for (std::size_t i = 0; i < L; ++i) {
    acc[i] = stream.limbs()[i];
    step[i] = stream.step_limbs()[i];
  }
  const std::uint16_t* table = bucket_.data();
  std::uint64_t n = n_start;
  for (std::uint64_t i = 0; i < count; ++i, ++n) {
    const std::uint16_t c = table[acc[L - 1] >> 48];
    visit(n, c != kCheck ? unsigned{c} : classify_limbs(n, acc));
    unsigned char carry = 0;
    for (std::size_t j = 0; j < L; ++j) {
      const unsigned __int128 s = static_cast<unsigned __int128>(acc[j]) + step[j] + carry;
      acc[j] = static_cast<std::uint64_t>(s);
      carry = static_cast<unsigned char>(s >> 64);
    }
  }
}

template <class Visit>
void BoundaryClassifier::run_generic(std::uint64_t n_start, std::uint64_t count,
                                     Visit& visit) const {
  FracStream stream(alpha_value_, n_start);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint16_t c = bucket_[stream.top_word() >> 48];
    visit(stream.index(), c != kCheck ? unsigned{c} : classify_limbs(stream.index(), stream.limbs()));
    stream.advance();
  }
}

}  // namespace benford::hiprec
