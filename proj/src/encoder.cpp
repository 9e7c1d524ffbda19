#include "polarbd/encoder.hpp"

namespace polarbd {

void polar_transform_inplace(BitVec& v) {
    const int n = static_cast<int>(v.size());
    log2_exact(n);
    for (int step = 1; step < n; step <<= 1)
        for (int block = 0; block < n; block += 2 * step)
            for (int i = block; i < block + step; ++i) v[i] ^= v[i + step];
}

BitVec polar_transform(BitVec v) {
    polar_transform_inplace(v);
    return v;
}

BitVec expand_info(const BitVec& info, const CodeSpec& spec) {
    if (static_cast<int>(info.size()) != spec.info_len_k)
        throw std::invalid_argument("info length must equal K");
    check_bits(info);
    BitVec u(static_cast<std::size_t>(spec.block_len_n), 0u);
    auto pos = spec.info_positions();
    for (std::size_t i = 0; i < pos.size(); ++i) u[static_cast<std::size_t>(pos[i])] = info[i];
    return u;
}

BitVec encode_nonsystematic(const BitVec& u) {
    check_bits(u);
    return polar_transform(u);
}

BitVec encode_systematic(const BitVec& info, const CodeSpec& spec) {
    BitVec v = polar_transform(expand_info(info, spec));
    for (int i : spec.frozen_set) v[static_cast<std::size_t>(i)] = 0u;
    polar_transform_inplace(v);
    return v;
}

}  // namespace polarbd
