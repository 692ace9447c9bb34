#pragma once
#include <cstdint>
#include <optional>

#include "hogboost/dataset.hpp"
#include "hogboost/leaf_solver.hpp"
#include "hogboost/loss.hpp"
#include "hogboost/tree.hpp"

namespace hogboost {

struct SplitDecision {
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
    GradStats left_stats;
    GradStats right_stats;
};

// Exact greedy split search over every feature. Rows are scanned in ascending
// feature order via the precomputed sort indices; candidate thresholds sit at
// midpoints between consecutive distinct values. Returns the candidate with
// maximum gain = score(left) + score(right) - score(node), or nullopt when no
// candidate has gain > min_gain with at least min_child_rows on both sides.
// Ties break toward the lower feature index, then the lower threshold.
std::optional<SplitDecision> find_best_split(const Dataset& data, const RowSet& rows,
                                             const GradBundle& grads, const SolverConfig& config,
                                             std::int64_t min_child_rows = 1,
                                             double min_gain = 0.0);

struct BuildStats {
    int leaf_fallbacks = 0; // leaf-solver fallbacks among finalized leaf weights
};

// Depth-first exact greedy growth to max_depth. Child row lists inherit the
// parent's per-feature sorted order through a stable partition; nothing is
// re-sorted. Leaf weights come from the configured-order solver.
Tree build_tree(const Dataset& data, const RowSet& rows, const GradBundle& grads,
                const SolverConfig& config, int max_depth, std::int64_t min_child_rows = 1,
                double min_gain = 0.0, BuildStats* stats = nullptr);

} // namespace hogboost
