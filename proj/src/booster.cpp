#include "hogboost/booster.hpp"
#include "hogboost/errors.hpp"
#include "hogboost/tree_builder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hogboost {

namespace {

void validate_config(const BoostConfig& c) {
    if (c.n_rounds < 0) throw std::invalid_argument("n_rounds must be >= 0");
    if (!(c.learning_rate > 0.0 && c.learning_rate <= 1.0))
        throw std::invalid_argument("learning_rate must be in (0, 1]");
    if (c.order < 2 || c.order > 4) throw std::invalid_argument("order must be 2, 3, or 4");
    if (c.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    if (c.max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
    if (!(c.trust_alpha > 0.0)) throw std::invalid_argument("trust_alpha must be > 0");
    if (c.early_stop_rounds && *c.early_stop_rounds < 1)
        throw std::invalid_argument("early_stop_rounds must be >= 1");
}

double initial_base_score(const BoostConfig& config, const Dataset& train) {
    if (config.base_score) return *config.base_score;
    double mean = 0.0;
    for (std::size_t i = 0; i < train.n_rows(); ++i) mean += train.label(i);
    mean /= static_cast<double>(train.n_rows());
    if (config.loss == LossKind::squared_error) return mean;
    // Log-odds of the label mean, clamped for degenerate all-0/all-1 labels.
    return std::clamp(std::log(mean) - std::log1p(-mean), -10.0, 10.0);
}

double mean_loss(LossKind kind, std::span<const double> labels, std::span<const double> preds) {
    return loss_value(kind, labels, preds) / static_cast<double>(labels.size());
}

double accuracy_of(std::span<const double> labels, std::span<const double> raw) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        hits += static_cast<std::size_t>((raw[i] > 0.0) == (labels[i] == 1.0));
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

} // namespace

FitResult fit(const Dataset& train, const Dataset* valid, const BoostConfig& config,
              const RoundObserver& observer) {
    validate_config(config);
    if (valid && valid->n_features() != train.n_features())
        throw DataError("validation set has " + std::to_string(valid->n_features()) +
                        " features, train has " + std::to_string(train.n_features()));
    if (config.loss == LossKind::logloss && !train.labels_are_binary())
        throw DataError("logloss requires labels in {0, 1}");
    if (config.early_stop_rounds && !valid)
        throw std::invalid_argument("early stopping requires a validation set");

    FitResult result;
    Model& model = result.model;
    model.config = config;
    model.feature_count = train.n_features();
    model.base_score = initial_base_score(config, train);

    const std::size_t n = train.n_rows();
    std::vector<double> preds(n, model.base_score);
    std::vector<double> valid_preds;
    if (valid) valid_preds.assign(valid->n_rows(), model.base_score);

    const RowSet all_rows = RowSet::all(n);
    const SolverConfig solver = config.solver();
    const double eta = config.learning_rate;

    double best_valid_loss = std::numeric_limits<double>::infinity();
    int rounds_since_improvement = 0;
    double elapsed_ms = 0.0;

    using clock = std::chrono::steady_clock;
    for (int round = 1; round <= config.n_rounds; ++round) {
        const auto t0 = clock::now();
        GradBundle grads = derivatives(config.loss, train.labels(), preds, config.order);
        BuildStats build_stats;
        Tree tree = build_tree(train, all_rows, grads, solver, config.max_depth,
                               config.min_child_rows, config.min_gain, &build_stats);
        for (std::size_t i = 0; i < n; ++i) preds[i] += eta * tree.predict_row(train, i);
        elapsed_ms += std::chrono::duration<double, std::milli>(clock::now() - t0).count();

        RoundRecord rec;
        rec.round = round;
        rec.train_loss = mean_loss(config.loss, train.labels(), preds);
        rec.cumulative_time_ms = elapsed_ms;
        rec.fallback_count = build_stats.leaf_fallbacks;
        if (valid) {
            for (std::size_t i = 0; i < valid->n_rows(); ++i)
                valid_preds[i] += eta * tree.predict_row(*valid, i);
            rec.valid_loss = mean_loss(config.loss, valid->labels(), valid_preds);
            rec.valid_accuracy = accuracy_of(valid->labels(), valid_preds);
        }
        result.records.push_back(rec);
        model.trees.push_back(std::move(tree));
        if (observer && !observer(round, model.trees.back())) break;

        if (valid && config.early_stop_rounds) {
            if (*rec.valid_loss < best_valid_loss) {
                best_valid_loss = *rec.valid_loss;
                rounds_since_improvement = 0;
            } else if (++rounds_since_improvement >= *config.early_stop_rounds) {
                break;
            }
        }
    }
    return result;
}

std::vector<double> predict(const Model& model, const Dataset& data) {
    if (data.n_features() != model.feature_count)
        throw DataError("dataset has " + std::to_string(data.n_features()) +
                        " features, model expects " + std::to_string(model.feature_count));
    std::vector<double> preds(data.n_rows(), model.base_score);
    // Same accumulation order as training's incremental updates, so the two
    // agree bitwise.
    const double eta = model.config.learning_rate;
    for (const Tree& tree : model.trees)
        for (std::size_t i = 0; i < preds.size(); ++i)
            preds[i] += eta * tree.predict_row(data, i);
    return preds;
}

std::vector<double> predict_proba(const Model& model, const Dataset& data) {
    std::vector<double> p = predict(model, data);
    for (double& v : p) v = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
    return p;
}

EvalResult evaluate_predictions(LossKind loss, std::span<const double> labels,
                                std::span<const double> raw_scores) {
    EvalResult r;
    r.loss = mean_loss(loss, labels, raw_scores);
    r.accuracy = accuracy_of(labels, raw_scores);
    return r;
}

EvalResult evaluate(const Model& model, const Dataset& data) {
    const std::vector<double> raw = predict(model, data);
    return evaluate_predictions(model.config.loss, data.labels(), raw);
}

} // namespace hogboost
