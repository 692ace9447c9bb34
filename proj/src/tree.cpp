#include "hogboost/tree.hpp"
#include "hogboost/dataset.hpp"
#include "hogboost/errors.hpp"

#include <cmath>

namespace hogboost {

double Tree::predict(std::span<const double> features) const {
    if (features.size() != n_features)
        throw DataError("expected " + std::to_string(n_features) + " features, got " +
                        std::to_string(features.size()));
    for (double v : features)
        if (!std::isfinite(v)) throw DataError("non-finite feature value in prediction input");

    const TreeNode* node = &nodes[0];
    while (!node->is_leaf())
        node = &nodes[features[node->feature] < node->threshold ? node->left : node->right];
    return node->weight;
}

double Tree::predict_row(const Dataset& data, std::size_t row) const {
    const TreeNode* node = &nodes[0];
    while (!node->is_leaf())
        node = &nodes[data.value(node->feature, row) < node->threshold ? node->left : node->right];
    return node->weight;
}

} // namespace hogboost
