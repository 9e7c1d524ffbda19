#pragma once

#include "polarbd/bits.hpp"
#include "polarbd/code_spec.hpp"

namespace polarbd {

// In-place multiply by the n-fold Kronecker power of [[1,0],[1,1]] over GF(2).
// The transform is its own inverse.
void polar_transform_inplace(BitVec& v);
BitVec polar_transform(BitVec v);

// Scatters K info bits into the non-frozen positions (ascending), zeros elsewhere.
BitVec expand_info(const BitVec& info, const CodeSpec& spec);

// x = u * F^{(x)n}; u must already carry zeros at frozen positions.
BitVec encode_nonsystematic(const BitVec& u);

// Double-transform systematic encoder: the codeword restricted to the info
// positions equals `info`, and the re-derived u is zero on frozen positions.
BitVec encode_systematic(const BitVec& info, const CodeSpec& spec);

}  // namespace polarbd
