#include "polarbd/decoders.hpp"

namespace polarbd {

void decode_leaf_into(NodeKind kind, const double* alpha, int size, std::uint8_t* beta) {
    switch (kind) {
        case NodeKind::Rate0:
            for (int i = 0; i < size; ++i) beta[i] = 0u;
            return;
        case NodeKind::Rate1:
            for (int i = 0; i < size; ++i) beta[i] = hard_decision(alpha[i]);
            return;
        case NodeKind::Rep: {
            double s = 0.0;
            for (int i = 0; i < size; ++i) s += alpha[i];
            const std::uint8_t bit = hard_decision(s);
            for (int i = 0; i < size; ++i) beta[i] = bit;
            return;
        }
        case NodeKind::Spc: {
            std::uint8_t parity = 0u;
            int weakest = 0;
            for (int i = 0; i < size; ++i) {
                beta[i] = hard_decision(alpha[i]);
                parity ^= beta[i];
                if (std::abs(alpha[i]) < std::abs(alpha[weakest])) weakest = i;
            }
            if (parity) beta[weakest] ^= 1u;
            return;
        }
        case NodeKind::Branch: break;
    }
    throw std::invalid_argument("cannot decode a branch node as a leaf");
}

BitVec decode_leaf(NodeKind kind, const LlrVec& alpha) {
    if (alpha.empty()) throw std::invalid_argument("empty alpha");
    BitVec beta(alpha.size());
    decode_leaf_into(kind, alpha.data(), static_cast<int>(alpha.size()), beta.data());
    return beta;
}

BitVec extract_info(const DecodeResult& result, const CodeSpec& spec) {
    const BitVec& src = spec.systematic ? result.codeword : result.u_est;
    auto pos = spec.info_positions();
    BitVec info(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) info[i] = src[static_cast<std::size_t>(pos[i])];
    return info;
}

namespace {

std::vector<std::vector<double>> make_scratch(int block_len) {
    std::vector<std::vector<double>> scratch;
    for (int s = block_len / 2; s >= 1; s /= 2) scratch.emplace_back(static_cast<std::size_t>(s));
    return scratch;
}

}  // namespace

FastSscDecoder::FastSscDecoder(const CodeSpec& spec, const TreeConfig& config)
    : FastSscDecoder(std::make_shared<const DecoderTree>(build_tree(spec, config))) {}

FastSscDecoder::FastSscDecoder(std::shared_ptr<const DecoderTree> tree)
    : tree_(std::move(tree)), scratch_(make_scratch(tree_->block_len())) {}

DecodeResult FastSscDecoder::decode(const LlrVec& llr) {
    DecodeResult out;
    sweep(llr, out.codeword, [](const TreeNode&, const double*, int) { return true; });
    out.u_est = polar_transform(out.codeword);
    return out;
}

ScDecoder::ScDecoder(const CodeSpec& spec) {
    validate(spec);
    frozen_ = spec.frozen_mask();
    scratch_ = make_scratch(spec.block_len_n);
}

void ScDecoder::rec(const double* alpha, int start, int size, int depth) {
    if (size == 1) {
        beta_[static_cast<std::size_t>(start)] =
            frozen_[static_cast<std::size_t>(start)] ? 0u : hard_decision(alpha[0]);
        return;
    }
    const int h = size / 2;
    double* child = scratch_[static_cast<std::size_t>(depth)].data();
    for (int i = 0; i < h; ++i) child[i] = f_minsum(alpha[i], alpha[i + h]);
    rec(child, start, h, depth + 1);
    for (int i = 0; i < h; ++i) child[i] = g_update(alpha[i], alpha[i + h], beta_[start + i]);
    rec(child, start + h, h, depth + 1);
    for (int i = 0; i < h; ++i) beta_[start + i] ^= beta_[start + h + i];
}

DecodeResult ScDecoder::decode(const LlrVec& llr) {
    const int n = static_cast<int>(frozen_.size());
    if (static_cast<int>(llr.size()) != n) throw std::invalid_argument("llr length must equal N");
    beta_.assign(llr.size(), 0u);
    rec(llr.data(), 0, n, 0);
    DecodeResult out;
    out.codeword = beta_;
    out.u_est = polar_transform(beta_);
    return out;
}

DecodeResult decode_fast_ssc(const LlrVec& llr, const CodeSpec& spec, const TreeConfig& config) {
    return FastSscDecoder(spec, config).decode(llr);
}

DecodeResult decode_sc(const LlrVec& llr, const CodeSpec& spec) {
    return ScDecoder(spec).decode(llr);
}

}  // namespace polarbd
