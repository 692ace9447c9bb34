#include "hogboost/tree_builder.hpp"
#include "hogboost/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hogboost {

namespace {

struct GradView {
    const double* g1 = nullptr;
    const double* g2 = nullptr;
    const double* g3 = nullptr;
    const double* g4 = nullptr;

    explicit GradView(const GradBundle& b, int order) {
        g1 = b.g1.data();
        g2 = b.g2.data();
        if (order >= 3) g3 = b.g3.data();
        if (order >= 4) g4 = b.g4.data();
    }
    void add_to(GradStats& s, std::uint32_t row) const {
        s.add_row(g1[row], g2[row], g3 ? g3[row] : 0.0, g4 ? g4[row] : 0.0);
    }
};

// Node stats are accumulated over the RowSet in its stored order (ascending
// row index everywhere in this builder), so independently recomputed sums
// reproduce them bit for bit.
GradStats sum_stats(const GradView& g, const std::vector<std::uint32_t>& rows) {
    GradStats s;
    for (std::uint32_t r : rows) g.add_to(s, r);
    return s;
}

// Midpoint threshold in (lo, hi]; rows with value < threshold go left, so the
// partition matches the scan position for every data value.
double split_threshold(double lo, double hi) {
    double thr = lo + 0.5 * (hi - lo);
    if (!(thr > lo)) thr = hi;
    return thr;
}

// Exact greedy scan of one node. `sorted` holds the node's rows in ascending
// order of each feature (a subsequence of the dataset's global sort index).
std::optional<SplitDecision> scan_node(const Dataset& data,
                                       const std::vector<std::vector<std::uint32_t>>& sorted,
                                       const GradStats& node_stats, const GradView& grads,
                                       const SolverConfig& config, std::int64_t min_child_rows,
                                       double min_gain) {
    const double node_score = leaf_score(node_stats, config);
    const std::int64_t n = node_stats.count;

    std::optional<SplitDecision> best;
    double best_gain = min_gain;

    for (std::size_t f = 0; f < data.n_features(); ++f) {
        const double* col = data.column(f).data();
        const std::uint32_t* idx = sorted[f].data();

        GradStats left;
        double prev_value = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            const std::uint32_t row = idx[i];
            const double value = col[row];
            if (i > 0 && value > prev_value && left.count >= min_child_rows &&
                n - left.count >= min_child_rows) {
                const GradStats right = node_stats - left;
                const double gain =
                    leaf_score(left, config) + leaf_score(right, config) - node_score;
                if (gain > best_gain) {
                    best_gain = gain;
                    best = SplitDecision{f, split_threshold(prev_value, value), gain, left, right};
                }
            }
            grads.add_to(left, row);
            prev_value = value;
        }
    }
    return best;
}

struct Builder {
    const Dataset& data;
    const GradView grads;
    const SolverConfig& config;
    const int max_depth;
    const std::int64_t min_child_rows;
    const double min_gain;

    Tree tree;
    BuildStats build_stats;
    std::vector<std::uint8_t> goes_left; // scratch, indexed by row

    Builder(const Dataset& d, const GradBundle& g, const SolverConfig& c, int depth,
            std::int64_t min_rows, double gain)
        : data(d), grads(g, c.order), config(c), max_depth(depth), min_child_rows(min_rows),
          min_gain(gain), goes_left(d.n_rows(), 0) {
        tree.n_features = d.n_features();
    }

    int build_node(std::vector<std::uint32_t> rows,
                   std::vector<std::vector<std::uint32_t>> sorted, int depth) {
        const GradStats stats = sum_stats(grads, rows);

        std::optional<SplitDecision> split;
        if (depth < max_depth)
            split = scan_node(data, sorted, stats, grads, config, min_child_rows, min_gain);

        const int index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.depth = std::max(tree.depth, depth);

        if (!split) {
            const LeafSolution leaf = solve_leaf(stats, config);
            TreeNode& node = tree.nodes[index];
            node.weight = leaf.weight;
            node.row_count = static_cast<std::int64_t>(rows.size());
            tree.n_leaves += 1;
            if (leaf.diag.fallback_used) build_stats.leaf_fallbacks += 1;
            return index;
        }

        for (std::uint32_t r : rows)
            goes_left[r] = data.value(split->feature, r) < split->threshold;

        std::vector<std::uint32_t> left_rows, right_rows;
        left_rows.reserve(rows.size());
        right_rows.reserve(rows.size());
        for (std::uint32_t r : rows)
            (goes_left[r] ? left_rows : right_rows).push_back(r);
        rows.clear();
        rows.shrink_to_fit();

        // Stable partition of each feature's sorted list; children inherit
        // the parent's order without re-sorting.
        std::vector<std::vector<std::uint32_t>> left_sorted(sorted.size()),
            right_sorted(sorted.size());
        for (std::size_t f = 0; f < sorted.size(); ++f) {
            left_sorted[f].reserve(left_rows.size());
            right_sorted[f].reserve(right_rows.size());
            for (std::uint32_t r : sorted[f])
                (goes_left[r] ? left_sorted[f] : right_sorted[f]).push_back(r);
            sorted[f].clear();
            sorted[f].shrink_to_fit();
        }
        sorted.clear();

        const int left_index = build_node(std::move(left_rows), std::move(left_sorted), depth + 1);
        const int right_index =
            build_node(std::move(right_rows), std::move(right_sorted), depth + 1);

        TreeNode& node = tree.nodes[index];
        node.feature = static_cast<std::int32_t>(split->feature);
        node.threshold = split->threshold;
        node.left = left_index;
        node.right = right_index;
        return index;
    }
};

void validate_inputs(const Dataset& data, const RowSet& rows, const GradBundle& grads,
                     const SolverConfig& config) {
    if (rows.empty()) throw DataError("row set is empty");
    if (grads.n_rows() != data.n_rows())
        throw DataError("gradient bundle covers " + std::to_string(grads.n_rows()) +
                        " rows, dataset has " + std::to_string(data.n_rows()));
    if (grads.order < config.order)
        throw DataError("gradient bundle order " + std::to_string(grads.order) +
                        " is below solver order " + std::to_string(config.order));
}

// The node's rows in ascending order of each feature, filtered from the
// global sort index.
std::vector<std::vector<std::uint32_t>> sorted_lists_for(const Dataset& data,
                                                         const RowSet& rows) {
    std::vector<std::uint8_t> member(data.n_rows(), 0);
    for (std::uint32_t r : rows.indices) {
        if (r >= data.n_rows()) throw DataError("row index " + std::to_string(r) + " out of range");
        member[r] = 1;
    }
    std::vector<std::vector<std::uint32_t>> sorted(data.n_features());
    for (std::size_t f = 0; f < data.n_features(); ++f) {
        sorted[f].reserve(rows.size());
        for (std::uint32_t r : data.sort_index(f))
            if (member[r]) sorted[f].push_back(r);
    }
    return sorted;
}

} // namespace

std::optional<SplitDecision> find_best_split(const Dataset& data, const RowSet& rows,
                                             const GradBundle& grads, const SolverConfig& config,
                                             std::int64_t min_child_rows, double min_gain) {
    validate_inputs(data, rows, grads, config);
    const GradView view(grads, config.order);
    const GradStats stats = sum_stats(view, rows.indices);
    return scan_node(data, sorted_lists_for(data, rows), stats, view, config, min_child_rows,
                     min_gain);
}

Tree build_tree(const Dataset& data, const RowSet& rows, const GradBundle& grads,
                const SolverConfig& config, int max_depth, std::int64_t min_child_rows,
                double min_gain, BuildStats* stats) {
    validate_inputs(data, rows, grads, config);
    if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");

    Builder builder(data, grads, config, max_depth, min_child_rows, min_gain);
    builder.build_node(rows.indices, sorted_lists_for(data, rows), 0);
    if (stats) *stats = builder.build_stats;
    return std::move(builder.tree);
}

} // namespace hogboost
