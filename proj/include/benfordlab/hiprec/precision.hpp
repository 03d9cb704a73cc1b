#pragma once

#include <cstdint>

namespace benford::hiprec {

// Working precision for indices up to n_max: 2*ceil(log2 n_max) + 96 bits.
// The error of {n alpha} grows linearly in n, so this leaves at least 96
// correct bits at the largest index.
unsigned default_bits(std::uint64_t n_max);

}  // namespace benford::hiprec
