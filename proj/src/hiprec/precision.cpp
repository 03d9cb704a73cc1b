#include "benfordlab/hiprec/precision.hpp"

#include <bit>

namespace benford::hiprec {

unsigned default_bits(std::uint64_t n_max) {
  if (n_max <= 1) return 96;
  const unsigned ceil_log2 = static_cast<unsigned>(std::bit_width(n_max - 1));
  return 2 * ceil_log2 + 96;
}

}  // namespace benford::hiprec
