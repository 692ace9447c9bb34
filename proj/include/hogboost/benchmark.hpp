#pragma once
#include <string>
#include <vector>

#include "hogboost/booster.hpp"

namespace hogboost {

// Grid and budget for the time-to-threshold protocol. `base` supplies every
// non-swept training knob (depth, loss, solver modes, stoppers).
struct BenchmarkSettings {
    std::vector<int> orders = {2, 3, 4};
    std::vector<double> lambdas = {1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6};
    std::vector<double> etas = {0.1, 0.3, 1.0};
    int rounds_budget = 200;
    BoostConfig base;
};

struct BenchmarkConfigResult {
    int order = 2;
    double lambda = 1.0;
    double eta = 0.1;
    double best_accuracy = 0.0;         // best test accuracy over the run
    int rounds_to_threshold = -1;       // -1 = not reached within budget
    double time_to_threshold_ms = -1.0; // training time at that round
    double gap_percent = 0.0;           // vs the fastest order-2 config; valid when reached
    std::vector<RoundRecord> records;   // train/validation curves
    std::vector<double> test_accuracy;  // per-round test accuracy curve

    bool reached() const { return rounds_to_threshold >= 0; }
};

struct BenchmarkReport {
    double reference_best_accuracy = 0.0; // best test accuracy of any order-2 config
    double threshold_accuracy = 0.0;      // 0.99 * reference_best_accuracy
    double reference_time_ms = 0.0;       // fastest order-2 time to threshold
    int reference_rounds = 0;
    std::vector<BenchmarkConfigResult> configs;

    // Best (fewest rounds, then least time) config of one order; -1 if none reached.
    int best_config_index(int order) const;
};

// Time-to-threshold protocol: (1) every order-2 (lambda, eta) config trains
// for the full budget and the best test accuracy across them becomes the
// reference; (2) the threshold is 99% of that reference; (3) higher-order
// configs train until they cross the threshold or exhaust the budget;
// order-2 threshold crossings are read off the phase-1 curves. Wall times
// count training work only. Configs run sequentially.
BenchmarkReport run_benchmark(const Dataset& train, const Dataset& valid, const Dataset& test,
                              const BenchmarkSettings& settings);

// Per-order summary with Time (s) and Gap % columns.
std::string format_report_table(const BenchmarkReport& report);

// One CSV row per config: order,lambda,eta,best_accuracy,threshold_accuracy,
// rounds_to_threshold,time_to_threshold_ms,gap_percent.
std::string report_to_csv(const BenchmarkReport& report);

// Contiguous row range [begin, end) of a dataset as a new Dataset.
Dataset dataset_slice(const Dataset& data, std::size_t begin, std::size_t end);

} // namespace hogboost
