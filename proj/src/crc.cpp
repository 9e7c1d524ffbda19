#include "polarbd/crc.hpp"

#include <algorithm>

namespace polarbd {

CrcSpec crc_ccitt16() { return CrcSpec{}; }

namespace {

std::uint32_t reverse_bits(std::uint32_t v, int width) {
    std::uint32_t r = 0;
    for (int i = 0; i < width; ++i)
        if (v & (1u << i)) r |= 1u << (width - 1 - i);
    return r;
}

}  // namespace

std::uint32_t crc_compute(const BitVec& message, const CrcSpec& spec) {
    if (spec.width < 1 || spec.width > 32) throw std::invalid_argument("crc width out of range");
    check_bits(message);
    const std::uint32_t mask = (spec.width == 32) ? 0xFFFFFFFFu : (1u << spec.width) - 1u;
    std::uint32_t reg = spec.init_value & mask;
    const std::size_t n = message.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t bit = spec.reflect_in ? message[n - 1 - i] : message[i];
        std::uint32_t fb = (bit ^ (reg >> (spec.width - 1))) & 1u;
        reg = (reg << 1) & mask;
        if (fb) reg ^= spec.polynomial & mask;
    }
    if (spec.reflect_out) reg = reverse_bits(reg, spec.width);
    return (reg ^ spec.final_xor) & mask;
}

bool crc_check(const BitVec& message_with_crc, const CrcSpec& spec) {
    if (message_with_crc.size() < static_cast<std::size_t>(spec.width))
        throw std::invalid_argument("message shorter than crc width");
    BitVec payload(message_with_crc.begin(), message_with_crc.end() - spec.width);
    BitVec tail(message_with_crc.end() - spec.width, message_with_crc.end());
    return tail == crc_bits(crc_compute(payload, spec), spec.width);
}

BitVec crc_bits(std::uint32_t value, int width) {
    BitVec out(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i)
        out[static_cast<std::size_t>(i)] = (value >> (width - 1 - i)) & 1u;
    return out;
}

BitVec attach_crc(const BitVec& payload, const CrcSpec& spec) {
    BitVec out = payload;
    BitVec tail = crc_bits(crc_compute(payload, spec), spec.width);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

}  // namespace polarbd
