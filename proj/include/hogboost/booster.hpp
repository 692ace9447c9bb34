#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hogboost/dataset.hpp"
#include "hogboost/leaf_solver.hpp"
#include "hogboost/loss.hpp"
#include "hogboost/tree.hpp"

namespace hogboost {

struct BoostConfig {
    int n_rounds = 1000;
    double learning_rate = 0.1; // in (0, 1]
    int order = 2;              // {2, 3, 4}
    double lambda = 1.0;
    int max_depth = 6;
    std::int64_t min_child_rows = 1;
    double min_gain = 0.0;
    LossKind loss = LossKind::logloss;
    CubicMode cubic_mode = CubicMode::halley;
    FourthOrderFormula fourth_order_formula = FourthOrderFormula::classical;
    double trust_alpha = 1.0;
    std::optional<int> early_stop_rounds;
    std::uint64_t seed = 0;
    // When set, overrides the loss-minimizing constant initializer.
    std::optional<double> base_score;

    SolverConfig solver() const {
        return {order, lambda, cubic_mode, trust_alpha, fourth_order_formula};
    }
};

// The trained ensemble: prediction = base_score + sum of eta * tree(x),
// accumulated in training order.
struct Model {
    double base_score = 0.0;
    std::vector<Tree> trees;
    BoostConfig config;
    std::size_t feature_count = 0;
};

struct RoundRecord {
    int round = 0; // 1-based
    double train_loss = 0.0;
    std::optional<double> valid_loss;
    std::optional<double> valid_accuracy;
    double cumulative_time_ms = 0.0; // training work only; non-decreasing
    int fallback_count = 0;          // leaf-solver fallbacks among placed leaf weights
};

struct FitResult {
    Model model;
    std::vector<RoundRecord> records;
};

// Called after each round with the tree just added; lets callers track extra
// metrics incrementally without touching the records schema. Returning false
// stops training after the current round.
using RoundObserver = std::function<bool(int round, const Tree& tree)>;

// Additive training loop: per round, compute derivatives at the current
// predictions, grow one tree, apply shrinkage, log a RoundRecord. Stops at
// n_rounds, or earlier when the validation loss has not improved for
// early_stop_rounds consecutive rounds. Deterministic for fixed inputs.
FitResult fit(const Dataset& train, const Dataset* valid, const BoostConfig& config,
              const RoundObserver& observer = {});

// Raw scores. For logloss these are log-odds; predict_proba applies the sigmoid.
std::vector<double> predict(const Model& model, const Dataset& data);
std::vector<double> predict_proba(const Model& model, const Dataset& data);

struct EvalResult {
    double loss = 0.0; // mean per-row loss
    double accuracy = 0.0;
};

// Mean loss and thresholded accuracy: predicted class is 1 iff raw score > 0.
EvalResult evaluate(const Model& model, const Dataset& data);
EvalResult evaluate_predictions(LossKind loss, std::span<const double> labels,
                                std::span<const double> raw_scores);

} // namespace hogboost
