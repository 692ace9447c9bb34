#pragma once
#include <random>

#include "hogboost/booster.hpp"
#include "test_util.hpp"

namespace testutil {

// Random tree over `m` features with thresholds/weights drawn from a pool of
// awkward doubles plus ordinary ones.
inline hogboost::Tree random_tree(std::mt19937_64& rng, std::size_t m, int depth) {
    static const double pool[] = {-0.0,  4.9e-324,         1.7976931348623157e308, 1.0 / 3.0,
                                  -1e-9, 0.1 + 0.2,        -123456.789,            2.2250738585072014e-308,
                                  42.0,  -0.49999999999999994};
    hogboost::Tree tree;
    tree.n_features = m;

    struct Gen {
        std::mt19937_64& rng;
        std::size_t m;
        hogboost::Tree& tree;
        double pick() {
            if (rng() % 2) return pool[rng() % (sizeof pool / sizeof pool[0])];
            return uniform(rng, -100, 100);
        }
        int node(int budget, int level) {
            const int index = static_cast<int>(tree.nodes.size());
            tree.nodes.emplace_back();
            tree.depth = std::max(tree.depth, level);
            if (budget == 0 || rng() % 3 == 0) {
                tree.nodes[index].weight = pick();
                tree.nodes[index].row_count = static_cast<std::int64_t>(rng() % 1000);
                tree.n_leaves += 1;
                return index;
            }
            const auto feature = static_cast<std::int32_t>(rng() % m);
            const double threshold = pick();
            const int left = node(budget - 1, level + 1);
            const int right = node(budget - 1, level + 1);
            tree.nodes[index].feature = feature;
            tree.nodes[index].threshold = threshold;
            tree.nodes[index].left = left;
            tree.nodes[index].right = right;
            return index;
        }
    } gen{rng, m, tree};
    gen.node(depth, 0);
    return tree;
}

inline hogboost::Model random_model(std::mt19937_64& rng) {
    hogboost::Model m;
    m.feature_count = 1 + rng() % 8;
    m.base_score = uniform(rng, -2, 2);
    m.config.order = 2 + static_cast<int>(rng() % 3);
    m.config.learning_rate = 0.25;
    m.config.seed = rng();
    if (rng() % 2) m.config.early_stop_rounds = static_cast<int>(1 + rng() % 50);
    if (rng() % 2) m.config.base_score = m.base_score;
    const int n_trees = static_cast<int>(rng() % 12);
    for (int t = 0; t < n_trees; ++t)
        m.trees.push_back(random_tree(rng, m.feature_count, 1 + static_cast<int>(rng() % 4)));
    return m;
}

} // namespace testutil
