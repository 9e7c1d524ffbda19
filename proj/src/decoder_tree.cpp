#include "polarbd/decoder_tree.hpp"

#include <numeric>
#include <sstream>

namespace polarbd {

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Rate0: return "rate0";
        case NodeKind::Rate1: return "rate1";
        case NodeKind::Rep: return "rep";
        case NodeKind::Spc: return "spc";
        case NodeKind::Branch: return "branch";
    }
    return "?";
}

int TreeNode::info_bits() const {
    switch (kind) {
        case NodeKind::Rate0: return 0;
        case NodeKind::Rate1: return size;
        case NodeKind::Rep: return 1;
        case NodeKind::Spc: return size - 1;
        case NodeKind::Branch: break;
    }
    throw std::logic_error("info_bits on a branch node");
}

NodeKind classify(const std::uint8_t* frozen, int size) {
    if (size < 1) throw std::invalid_argument("empty span");
    int n_frozen = 0;
    for (int i = 0; i < size; ++i) n_frozen += frozen[i] ? 1 : 0;
    if (n_frozen == size) return NodeKind::Rate0;
    if (n_frozen == 0) return NodeKind::Rate1;
    if (n_frozen == size - 1 && !frozen[size - 1]) return NodeKind::Rep;
    if (n_frozen == 1 && frozen[0]) return NodeKind::Spc;
    return NodeKind::Branch;
}

namespace {

bool leaf_allowed(NodeKind kind, int size, const TreeConfig& config) {
    if (kind == NodeKind::Branch) return false;
    if (kind == NodeKind::Spc && config.max_spc_size && size > *config.max_spc_size) return false;
    if (kind == NodeKind::Rep && config.max_rep_size && size > *config.max_rep_size) return false;
    return true;
}

std::unique_ptr<TreeNode> build_node(const std::uint8_t* frozen, int start, int size,
                                     const TreeConfig& config) {
    auto node = std::make_unique<TreeNode>();
    node->start = start;
    node->size = size;
    NodeKind kind = classify(frozen + start, size);
    if (size == 1 || leaf_allowed(kind, size, config)) {
        node->kind = kind;
        return node;
    }
    node->kind = NodeKind::Branch;
    node->left = build_node(frozen, start, size / 2, config);
    node->right = build_node(frozen, start + size / 2, size / 2, config);
    return node;
}

void collect_leaves(const TreeNode& node, std::vector<const TreeNode*>& out) {
    if (node.is_leaf()) {
        out.push_back(&node);
        return;
    }
    collect_leaves(*node.left, out);
    collect_leaves(*node.right, out);
}

void dump_text_rec(const TreeNode& node, int depth, std::ostringstream& os) {
    for (int i = 0; i < depth; ++i) os << "  ";
    os << node_kind_name(node.kind) << " [" << node.start << "," << node.start + node.size << ")";
    if (node.is_leaf()) os << " info=" << node.info_bits();
    os << "\n";
    if (!node.is_leaf()) {
        dump_text_rec(*node.left, depth + 1, os);
        dump_text_rec(*node.right, depth + 1, os);
    }
}

nlohmann::json dump_json_rec(const TreeNode& node) {
    nlohmann::json j{{"kind", node_kind_name(node.kind)}, {"start", node.start}, {"size", node.size}};
    if (!node.is_leaf()) {
        j["children"] = nlohmann::json::array({dump_json_rec(*node.left), dump_json_rec(*node.right)});
    }
    return j;
}

}  // namespace

DecoderTree::DecoderTree(std::unique_ptr<TreeNode> root, int block_len)
    : root_(std::move(root)), block_len_(block_len) {
    collect_leaves(*root_, leaves_);
    int covered = 0;
    for (auto* leaf : leaves_) {
        if (leaf->start != covered) throw std::logic_error("leaves do not tile the block");
        covered += leaf->size;
        if (leaf->kind == NodeKind::Spc) ++spc_leaf_count_;
    }
    if (covered != block_len_) throw std::logic_error("leaves do not cover the block");
}

std::string DecoderTree::dump_text() const {
    std::ostringstream os;
    dump_text_rec(*root_, 0, os);
    return os.str();
}

nlohmann::json DecoderTree::dump_json() const { return dump_json_rec(*root_); }

DecoderTree build_tree(const std::vector<std::uint8_t>& frozen_mask, const TreeConfig& config) {
    const int n = static_cast<int>(frozen_mask.size());
    log2_exact(n);
    if (config.max_spc_size && *config.max_spc_size < 1)
        throw std::invalid_argument("max_spc_size must be positive");
    if (config.max_rep_size && *config.max_rep_size < 1)
        throw std::invalid_argument("max_rep_size must be positive");
    return DecoderTree(build_node(frozen_mask.data(), 0, n, config), n);
}

DecoderTree build_tree(const CodeSpec& spec, const TreeConfig& config) {
    validate(spec);
    return build_tree(spec.frozen_mask(), config);
}

}  // namespace polarbd
