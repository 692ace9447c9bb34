#pragma once
#include <cstdint>
#include <span>
#include <vector>

namespace hogboost {

class Dataset;

// Flat node record; nodes[0] is the root. feature < 0 marks a leaf.
struct TreeNode {
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double weight = 0.0;
    std::int64_t row_count = 0;

    bool is_leaf() const { return feature < 0; }
};

// Binary regression tree. Routing convention: value < threshold goes left,
// ties go right.
struct Tree {
    std::vector<TreeNode> nodes;
    std::size_t n_features = 0;
    int depth = 0;
    int n_leaves = 0;

    bool empty() const { return nodes.empty(); }

    // Weight of the leaf reached by `features` (one value per feature).
    double predict(std::span<const double> features) const;

    // Same routing reading a dataset row in place (no per-row gather).
    double predict_row(const Dataset& data, std::size_t row) const;
};

} // namespace hogboost
