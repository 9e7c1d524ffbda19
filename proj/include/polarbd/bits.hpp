#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace polarbd {

// Bit vectors hold one bit per element, value 0 or 1.
using BitVec = std::vector<std::uint8_t>;

// LLR convention: positive favors bit 0.
using LlrVec = std::vector<double>;

// Hard decision; an LLR of exactly 0 maps to bit 0.
inline std::uint8_t hard_decision(double llr) { return llr < 0.0 ? 1u : 0u; }

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline int log2_exact(int n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("length must be a power of two");
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

inline void check_bits(const BitVec& v) {
    for (auto b : v)
        if (b > 1u) throw std::invalid_argument("bit vector element out of {0,1}");
}

}  // namespace polarbd
