#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "polarbd/decoder_tree.hpp"

using namespace polarbd;

namespace {

std::vector<std::uint8_t> mask_from(std::initializer_list<int> bits) {
    std::vector<std::uint8_t> m;
    for (int b : bits) m.push_back(std::uint8_t(b));
    return m;
}

std::map<NodeKind, int> leaf_census(const DecoderTree& tree) {
    std::map<NodeKind, int> census;
    for (const TreeNode* leaf : tree.leaves()) ++census[leaf->kind];
    return census;
}

}  // namespace

TEST_CASE("classify recognizes all constituent patterns") {
    auto rate0 = mask_from({1, 1, 1, 1});
    auto rate1 = mask_from({0, 0, 0, 0});
    auto rep = mask_from({1, 1, 1, 0});
    auto spc = mask_from({1, 0, 0, 0});
    auto branch = mask_from({1, 0, 1, 0});
    CHECK(classify(rate0.data(), 4) == NodeKind::Rate0);
    CHECK(classify(rate1.data(), 4) == NodeKind::Rate1);
    CHECK(classify(rep.data(), 4) == NodeKind::Rep);
    CHECK(classify(spc.data(), 4) == NodeKind::Spc);
    CHECK(classify(branch.data(), 4) == NodeKind::Branch);
}

TEST_CASE("classify size-2 and size-1 spans") {
    auto fi = mask_from({1, 0});  // both a valid repetition and a valid parity check
    auto if_ = mask_from({0, 1});
    auto ii = mask_from({0, 0});
    auto ff = mask_from({1, 1});
    CHECK(classify(fi.data(), 2) == NodeKind::Rep);
    CHECK(classify(if_.data(), 2) == NodeKind::Branch);
    CHECK(classify(ii.data(), 2) == NodeKind::Rate1);
    CHECK(classify(ff.data(), 2) == NodeKind::Rate0);
    auto f1 = mask_from({1});
    auto i1 = mask_from({0});
    CHECK(classify(f1.data(), 1) == NodeKind::Rate0);
    CHECK(classify(i1.data(), 1) == NodeKind::Rate1);
    CHECK_THROWS_AS(classify(f1.data(), 0), std::invalid_argument);
}

TEST_CASE("node kind names") {
    CHECK(std::string(node_kind_name(NodeKind::Rate0)) == "rate0");
    CHECK(std::string(node_kind_name(NodeKind::Rate1)) == "rate1");
    CHECK(std::string(node_kind_name(NodeKind::Rep)) == "rep");
    CHECK(std::string(node_kind_name(NodeKind::Spc)) == "spc");
    CHECK(std::string(node_kind_name(NodeKind::Branch)) == "branch");
}

TEST_CASE("the (16,11) code prunes to repetition-4, parity-4, parity-8") {
    CodeSpec spec = make_code_spec(16, 11, 2.0);
    REQUIRE(spec.frozen_set == std::vector<int>{0, 1, 2, 4, 8});
    DecoderTree tree = build_tree(spec);
    const auto& leaves = tree.leaves();
    REQUIRE(leaves.size() == 3);
    CHECK(leaves[0]->kind == NodeKind::Rep);
    CHECK(leaves[0]->start == 0);
    CHECK(leaves[0]->size == 4);
    CHECK(leaves[0]->info_bits() == 1);
    CHECK(leaves[1]->kind == NodeKind::Spc);
    CHECK(leaves[1]->start == 4);
    CHECK(leaves[1]->size == 4);
    CHECK(leaves[1]->info_bits() == 3);
    CHECK(leaves[2]->kind == NodeKind::Spc);
    CHECK(leaves[2]->start == 8);
    CHECK(leaves[2]->size == 8);
    CHECK(leaves[2]->info_bits() == 7);
    CHECK(tree.spc_leaf_count() == 2);
}

TEST_CASE("degenerate masks collapse to a single leaf") {
    DecoderTree all_frozen = build_tree(std::vector<std::uint8_t>(8, 1));
    REQUIRE(all_frozen.leaves().size() == 1);
    CHECK(all_frozen.leaves()[0]->kind == NodeKind::Rate0);
    CHECK(all_frozen.leaves()[0]->size == 8);

    DecoderTree all_info = build_tree(std::vector<std::uint8_t>(8, 0));
    REQUIRE(all_info.leaves().size() == 1);
    CHECK(all_info.leaves()[0]->kind == NodeKind::Rate1);
}

TEST_CASE("the (512,80) tree leaf census") {
    CodeSpec spec = make_code_spec(512, 80, 2.0);
    DecoderTree tree = build_tree(spec);
    auto census = leaf_census(tree);
    CHECK(census[NodeKind::Rep] == 11);
    CHECK(census[NodeKind::Rate0] == 8);
    CHECK(census[NodeKind::Spc] == 7);
    CHECK(census[NodeKind::Rate1] == 6);
    CHECK(tree.spc_leaf_count() == 7);

    std::map<int, int> spc_sizes;
    int info_total = 0;
    for (const TreeNode* leaf : tree.leaves()) {
        info_total += leaf->info_bits();
        if (leaf->kind == NodeKind::Spc) ++spc_sizes[leaf->size];
    }
    CHECK(info_total == 80);
    CHECK(spc_sizes[4] == 5);
    CHECK(spc_sizes[8] == 2);
}

TEST_CASE("spc size cap splits oversized parity leaves without losing info bits") {
    CodeSpec spec = make_code_spec(16, 11, 2.0);
    TreeConfig config;
    config.max_spc_size = 4;
    DecoderTree tree = build_tree(spec, config);
    const auto& leaves = tree.leaves();
    REQUIRE(leaves.size() == 4);
    CHECK(leaves[0]->kind == NodeKind::Rep);
    CHECK(leaves[1]->kind == NodeKind::Spc);
    CHECK(leaves[1]->size == 4);
    CHECK(leaves[2]->kind == NodeKind::Spc);
    CHECK(leaves[2]->start == 8);
    CHECK(leaves[2]->size == 4);
    CHECK(leaves[3]->kind == NodeKind::Rate1);
    CHECK(leaves[3]->start == 12);
    CHECK(leaves[3]->size == 4);
    int info = 0;
    for (const TreeNode* leaf : leaves) info += leaf->info_bits();
    CHECK(info == 11);
    CHECK(tree.spc_leaf_count() == 2);
}

TEST_CASE("rep size cap splits oversized repetition leaves") {
    CodeSpec spec = make_code_spec(16, 11, 2.0);
    TreeConfig config;
    config.max_rep_size = 2;
    DecoderTree tree = build_tree(spec, config);
    const auto& leaves = tree.leaves();
    REQUIRE(leaves.size() == 4);
    CHECK(leaves[0]->kind == NodeKind::Rate0);
    CHECK(leaves[0]->size == 2);
    CHECK(leaves[1]->kind == NodeKind::Rep);
    CHECK(leaves[1]->size == 2);
    CHECK(leaves[2]->kind == NodeKind::Spc);
    CHECK(leaves[3]->kind == NodeKind::Spc);
}

TEST_CASE("tree config rejects nonpositive caps") {
    TreeConfig bad;
    bad.max_spc_size = 0;
    CHECK_THROWS_AS(build_tree(std::vector<std::uint8_t>(4, 0), bad), std::invalid_argument);
    TreeConfig bad2;
    bad2.max_rep_size = -1;
    CHECK_THROWS_AS(build_tree(std::vector<std::uint8_t>(4, 0), bad2), std::invalid_argument);
}

TEST_CASE("leaves tile the block in traversal order for random masks") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint8_t> mask(64);
        int info_bits = 0;
        for (auto& b : mask) {
            b = std::uint8_t(rng() & 1u);
            info_bits += b ? 0 : 1;
        }
        TreeConfig config;
        if (trial % 2 == 1) config.max_spc_size = 4;
        DecoderTree tree = build_tree(mask, config);
        int cursor = 0;
        int info_seen = 0;
        for (const TreeNode* leaf : tree.leaves()) {
            REQUIRE(leaf->start == cursor);
            cursor += leaf->size;
            info_seen += leaf->info_bits();
            // Every leaf span re-classifies to its own kind unless a cap
            // forced a split, which only produces smaller leaves.
            NodeKind natural = classify(mask.data() + leaf->start, leaf->size);
            if (!config.max_spc_size) CHECK(natural == leaf->kind);
            if (config.max_spc_size && leaf->kind == NodeKind::Spc)
                CHECK(leaf->size <= *config.max_spc_size);
        }
        CHECK(cursor == 64);
        CHECK(info_seen == info_bits);
    }
}

TEST_CASE("text and json dumps describe the tree") {
    CodeSpec spec = make_code_spec(16, 11, 2.0);
    DecoderTree tree = build_tree(spec);
    std::string text = tree.dump_text();
    CHECK(text.find("rep [0,4)") != std::string::npos);
    CHECK(text.find("spc [8,16)") != std::string::npos);

    nlohmann::json j = tree.dump_json();
    CHECK(j.at("kind") == "branch");
    CHECK(j.at("size") == 16);
    REQUIRE(j.contains("children"));
    CHECK(j["children"].size() == 2);
    CHECK(j["children"][1]["kind"] == "spc");
    CHECK(j["children"][0]["children"][0]["kind"] == "rep");
}

TEST_CASE("build_tree validates the code spec") {
    CodeSpec spec = make_code_spec(16, 11, 2.0);
    spec.frozen_set.back() = 16;  // out of range
    CHECK_THROWS_AS(build_tree(spec), std::invalid_argument);
    CHECK_THROWS_AS(build_tree(std::vector<std::uint8_t>{1, 0, 1}), std::invalid_argument);
}
