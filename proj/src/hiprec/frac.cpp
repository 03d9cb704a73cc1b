#include "benfordlab/hiprec/frac.hpp"

#include <stdexcept>

namespace benford::hiprec {
namespace {

unsigned limb_count(unsigned bits) { return (bits + 63) / 64; }

}  // namespace

std::vector<std::uint64_t> to_limbs(const mpz_class& value, unsigned bits) {
  const unsigned n = limb_count(bits);
  mpz_class shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), value.get_mpz_t(), 64 * n - bits);
  std::vector<std::uint64_t> limbs(n, 0);
  std::size_t written = 0;
  mpz_export(limbs.data(), &written, -1, sizeof(std::uint64_t), 0, 0, shifted.get_mpz_t());
  if (written > n) throw std::logic_error("to_limbs: value does not fit");
  return limbs;
}

mpz_class from_limbs(std::span<const std::uint64_t> limbs, unsigned bits) {
  mpz_class v;
  mpz_import(v.get_mpz_t(), limbs.size(), -1, sizeof(std::uint64_t), 0, 0, limbs.data());
  mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 64 * limbs.size() - bits);
  return v;
}

double FixedFrac::to_double() const {
  return PrecReal(frac, bits, err_ulp).to_double();
}

FixedFrac frac_at(std::uint64_t n, const PrecReal& alpha) {
  if (n == 0) throw std::invalid_argument("frac_at: index must be positive");
  mpz_class prod = alpha.frac_mantissa() * to_mpz(n);
  mpz_fdiv_r_2exp(prod.get_mpz_t(), prod.get_mpz_t(), alpha.bits());
  return FixedFrac{prod, n, alpha.bits(), alpha.err_ulp() * to_mpz(n)};
}

FracStream::FracStream(const PrecReal& alpha, std::uint64_t n_start)
    : index_(n_start), bits_(alpha.bits()), shift_(64 * limb_count(alpha.bits()) - alpha.bits()),
      alpha_err_(alpha.err_ulp()) {
  if (n_start == 0) throw std::invalid_argument("FracStream: start index must be positive");
  const mpz_class mantissa = alpha.frac_mantissa();
  step_ = to_limbs(mantissa, bits_);
  mpz_class prod = mantissa * to_mpz(n_start);
  mpz_class whole;
  mpz_fdiv_q_2exp(whole.get_mpz_t(), prod.get_mpz_t(), bits_);
  if (!mpz_fits_ulong_p(whole.get_mpz_t())) throw std::overflow_error("FracStream: index too large");
  whole_ = mpz_get_ui(whole.get_mpz_t());
  mpz_fdiv_r_2exp(prod.get_mpz_t(), prod.get_mpz_t(), bits_);
  acc_ = to_limbs(prod, bits_);
}

FixedFrac FracStream::current() const {
  return FixedFrac{from_limbs(acc_, bits_), index_, bits_,
                   alpha_err_ * to_mpz(index_)};
}

void FracStream::advance() {
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < acc_.size(); ++i) {
    const unsigned __int128 s = static_cast<unsigned __int128>(acc_[i]) + step_[i] + carry;
    acc_[i] = static_cast<std::uint64_t>(s);
    carry = s >> 64;
  }
  whole_ += static_cast<std::uint64_t>(carry);
  ++index_;
}

std::vector<FixedFrac> frac_stream(const PrecReal& alpha, std::uint64_t n_start,
                                   std::uint64_t count) {
  std::vector<FixedFrac> out;
  out.reserve(count);
  FracStream s(alpha, n_start);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(s.current());
    s.advance();
  }
  return out;
}

}  // namespace benford::hiprec
