#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polarbd/code_spec.hpp"

namespace polarbd {

enum class NodeKind { Rate0, Rate1, Rep, Spc, Branch };

const char* node_kind_name(NodeKind k);

struct TreeConfig {
    std::optional<int> max_spc_size;  // SPC spans larger than this are split
    std::optional<int> max_rep_size;  // likewise for repetition spans
};

struct TreeNode {
    NodeKind kind = NodeKind::Branch;
    int start = 0;  // first u index of the span
    int size = 0;   // span length, a power of two
    std::unique_ptr<TreeNode> left, right;

    bool is_leaf() const { return !left; }
    int info_bits() const;  // info bits carried by this span when it is a leaf
};

// Pattern classification of a frozen-mask span. A span that is both a valid
// repetition and a valid SPC pattern (size 2, [frozen, info]) classifies as Rep.
NodeKind classify(const std::uint8_t* frozen, int size);

class DecoderTree {
  public:
    DecoderTree(std::unique_ptr<TreeNode> root, int block_len);

    const TreeNode& root() const { return *root_; }
    int block_len() const { return block_len_; }
    const std::vector<const TreeNode*>& leaves() const { return leaves_; }  // traversal order
    int spc_leaf_count() const { return spc_leaf_count_; }

    std::string dump_text() const;
    nlohmann::json dump_json() const;

  private:
    std::unique_ptr<TreeNode> root_;
    int block_len_;
    std::vector<const TreeNode*> leaves_;
    int spc_leaf_count_ = 0;
};

DecoderTree build_tree(const std::vector<std::uint8_t>& frozen_mask, const TreeConfig& config = {});
DecoderTree build_tree(const CodeSpec& spec, const TreeConfig& config = {});

}  // namespace polarbd
