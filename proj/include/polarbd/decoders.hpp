#pragma once

#include <memory>

#include "polarbd/code_spec.hpp"
#include "polarbd/decoder_tree.hpp"
#include "polarbd/encoder.hpp"

namespace polarbd {

// Min-sum check update; sign(0) counts as +1.
inline double f_minsum(double a, double b) {
    double m = std::min(std::abs(a), std::abs(b));
    return ((a < 0.0) != (b < 0.0)) ? -m : m;
}

inline double g_update(double a, double b, std::uint8_t u) { return u ? b - a : b + a; }

// Constituent decoders. alpha has `size` entries; the returned word is the
// leaf's codeword estimate (even parity for SPC, constant for Rep).
void decode_leaf_into(NodeKind kind, const double* alpha, int size, std::uint8_t* beta);
BitVec decode_leaf(NodeKind kind, const LlrVec& alpha);

struct DecodeResult {
    BitVec codeword;
    BitVec u_est;
};

// x restricted to the info positions for systematic codes, u restricted otherwise.
BitVec extract_info(const DecodeResult& result, const CodeSpec& spec);

namespace detail {

// Depth-first sweep shared by plain decoding and blind detection. After each
// leaf is decoded into beta, visit(node, alpha, leaf_ordinal) runs; returning
// false abandons the sweep (beta is then not a valid codeword).
template <class Visit>
bool fast_ssc_sweep(const TreeNode& node, const double* alpha,
                    std::vector<std::vector<double>>& scratch, int depth, std::uint8_t* beta,
                    int& leaf_ordinal, Visit&& visit) {
    if (node.is_leaf()) {
        decode_leaf_into(node.kind, alpha, node.size, beta + node.start);
        return visit(node, alpha, leaf_ordinal++);
    }
    const int h = node.size / 2;
    double* child = scratch[static_cast<std::size_t>(depth)].data();
    for (int i = 0; i < h; ++i) child[i] = f_minsum(alpha[i], alpha[i + h]);
    if (!fast_ssc_sweep(*node.left, child, scratch, depth + 1, beta, leaf_ordinal, visit))
        return false;
    for (int i = 0; i < h; ++i) child[i] = g_update(alpha[i], alpha[i + h], beta[node.start + i]);
    if (!fast_ssc_sweep(*node.right, child, scratch, depth + 1, beta, leaf_ordinal, visit))
        return false;
    for (int i = 0; i < h; ++i) beta[node.start + i] ^= beta[node.start + h + i];
    return true;
}

}  // namespace detail

class FastSscDecoder {
  public:
    explicit FastSscDecoder(const CodeSpec& spec, const TreeConfig& config = {});
    explicit FastSscDecoder(std::shared_ptr<const DecoderTree> tree);

    const DecoderTree& tree() const { return *tree_; }
    std::shared_ptr<const DecoderTree> tree_ptr() const { return tree_; }

    DecodeResult decode(const LlrVec& llr);

    // Runs the sweep with a caller-supplied leaf visitor; returns false when
    // the visitor abandoned it. beta is resized and zeroed here.
    template <class Visit>
    bool sweep(const LlrVec& llr, BitVec& beta, Visit&& visit) {
        if (static_cast<int>(llr.size()) != tree_->block_len())
            throw std::invalid_argument("llr length must equal N");
        beta.assign(llr.size(), 0u);
        int ordinal = 0;
        return detail::fast_ssc_sweep(tree_->root(), llr.data(), scratch_, 0, beta.data(), ordinal,
                                      visit);
    }

  private:
    std::shared_ptr<const DecoderTree> tree_;
    std::vector<std::vector<double>> scratch_;  // one buffer per depth
};

// Bit-by-bit successive cancellation with the same f/g primitives.
class ScDecoder {
  public:
    explicit ScDecoder(const CodeSpec& spec);
    DecodeResult decode(const LlrVec& llr);

  private:
    std::vector<std::uint8_t> frozen_;
    std::vector<std::vector<double>> scratch_;
    BitVec beta_;
    void rec(const double* alpha, int start, int size, int depth);
};

DecodeResult decode_fast_ssc(const LlrVec& llr, const CodeSpec& spec, const TreeConfig& config = {});
DecodeResult decode_sc(const LlrVec& llr, const CodeSpec& spec);

}  // namespace polarbd
