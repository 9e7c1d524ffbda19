#pragma once

#include <cstdint>

#include "polarbd/bits.hpp"

namespace polarbd {

// Rocksoft-style CRC parameters operating on a bit stream.
// reflect_in reverses the whole input bit stream before division;
// reflect_out bit-reverses the width-bit remainder.
struct CrcSpec {
    int width = 16;
    std::uint32_t polynomial = 0x1021;
    std::uint32_t init_value = 0;
    bool reflect_in = false;
    bool reflect_out = false;
    std::uint32_t final_xor = 0;

    bool operator==(const CrcSpec&) const = default;
};

// CRC-16/CCITT as used throughout: x^16 + x^12 + x^5 + 1, zero init, no reflection.
CrcSpec crc_ccitt16();

std::uint32_t crc_compute(const BitVec& message, const CrcSpec& spec);

// Splits off the trailing `width` bits and recomputes over the rest.
bool crc_check(const BitVec& message_with_crc, const CrcSpec& spec);

// MSB-first bit expansion of a CRC value.
BitVec crc_bits(std::uint32_t value, int width);

// payload followed by its CRC, MSB first.
BitVec attach_crc(const BitVec& payload, const CrcSpec& spec);

}  // namespace polarbd
