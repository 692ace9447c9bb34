// hogboost command line: train, predict, eval, and the time-to-threshold
// benchmark. See README for the file formats.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hogboost/benchmark.hpp"
#include "hogboost/booster.hpp"
#include "hogboost/dataset.hpp"
#include "hogboost/errors.hpp"
#include "hogboost/model_store.hpp"

namespace {

using namespace hogboost;

std::string shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Common data flags shared by the subcommands.
struct DataOptions {
    std::string train_path, valid_path, test_path;
    std::string label = "label";
    std::string header = "auto";
    std::size_t max_rows = 0;
    std::vector<std::size_t> synthetic; // n_rows, n_features
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd, bool with_train, bool with_valid, bool with_test) {
        if (with_train) cmd->add_option("--train", train_path, "training CSV path");
        if (with_valid) cmd->add_option("--valid", valid_path, "validation CSV path");
        if (with_test) cmd->add_option("--test", test_path, "test/input CSV path");
        cmd->add_option("--label", label, "label column name (with header) or 0-based index")
            ->capture_default_str();
        cmd->add_option("--header", header, "CSV header row: auto, yes, or no")
            ->check(CLI::IsMember({"auto", "yes", "no"}))
            ->capture_default_str();
        cmd->add_option("--max-rows", max_rows, "read at most this many data rows (0 = all)");
        cmd->add_option("--synthetic", synthetic,
                        "generate synthetic data instead of reading --train: n_rows,n_features")
            ->delimiter(',')
            ->expected(1, 2);
        cmd->add_option("--seed", seed, "RNG seed for synthetic data")->capture_default_str();
    }

    bool header_for(const std::string& path) const {
        if (header == "yes") return true;
        if (header == "no") return false;
        // auto: a header is assumed when the first line has a non-numeric cell
        std::ifstream in(path);
        std::string line;
        if (!in || !std::getline(in, line)) return true;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t pos = line.find(',', start);
            std::string cell = line.substr(start, pos == std::string::npos ? pos : pos - start);
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            double v = 0.0;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || p != cell.data() + cell.size()) return true;
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return false;
    }

    Dataset load(const std::string& path, bool binary_labels) const {
        return load_csv(path, LabelColumn{label}, header_for(path), max_rows, binary_labels);
    }
};

// Training flags shared by train and benchmark.
struct TrainOptions {
    BoostConfig config;
    std::string cubic_mode = "halley";
    std::string fourth_order = "classical";
    std::string loss = "logloss";
    std::optional<int> early_stop;
    std::optional<double> base_score;

    void attach(CLI::App* cmd, bool single_order) {
        if (single_order)
            cmd->add_option("--order", config.order, "optimization order")
                ->check(CLI::IsMember({2, 3, 4}))
                ->capture_default_str();
        cmd->add_option("--rounds", config.n_rounds, "boosting rounds")->capture_default_str();
        cmd->add_option("--eta", config.learning_rate, "learning rate (shrinkage)")
            ->check(CLI::Range(1e-12, 1.0))
            ->capture_default_str();
        cmd->add_option("--lambda", config.lambda, "L2 leaf regularizer")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--max-depth", config.max_depth, "maximum tree depth")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--min-child-rows", config.min_child_rows,
                        "minimum rows on each side of a split")
            ->capture_default_str();
        cmd->add_option("--min-gain", config.min_gain, "minimum gain to accept a split")
            ->capture_default_str();
        cmd->add_option("--trust-alpha", config.trust_alpha,
                        "trust-region bound on alpha for high-order updates")
            ->capture_default_str();
        cmd->add_option("--cubic-mode", cubic_mode, "order-3 update: halley, exact, or series")
            ->check(CLI::IsMember({"halley", "exact", "series"}))
            ->capture_default_str();
        cmd->add_option("--fourth-order-formula", fourth_order,
                        "order-4 denominator variant: classical or paper")
            ->check(CLI::IsMember({"classical", "paper"}))
            ->capture_default_str();
        cmd->add_option("--loss", loss, "loss function: logloss or squared_error")
            ->check(CLI::IsMember({"logloss", "squared_error"}))
            ->capture_default_str();
        cmd->add_option("--early-stop", early_stop,
                        "stop when validation loss has not improved for this many rounds");
        cmd->add_option("--base-score", base_score,
                        "override the loss-minimizing constant initializer");
    }

    BoostConfig resolve(std::uint64_t seed) {
        config.cubic_mode = cubic_mode_from_string(cubic_mode);
        config.fourth_order_formula = fourth_order_formula_from_string(fourth_order);
        config.loss = loss_kind_from_string(loss);
        config.early_stop_rounds = early_stop;
        config.base_score = base_score;
        config.seed = seed;
        return config;
    }
};

void write_convergence_csv(const std::string& path, const std::vector<RoundRecord>& records) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "round,train_loss,valid_loss,valid_accuracy,cumulative_time_ms,fallback_count\n";
    for (const auto& r : records) {
        out << r.round << ',' << shortest(r.train_loss) << ',';
        if (r.valid_loss) out << shortest(*r.valid_loss);
        out << ',';
        if (r.valid_accuracy) out << shortest(*r.valid_accuracy);
        out << ',' << shortest(r.cumulative_time_ms) << ',' << r.fallback_count << '\n';
    }
    if (!out) throw DataError("I/O error writing '" + path + "'");
}

int cmd_train(DataOptions& data_opts, TrainOptions& train_opts, const std::string& model_path,
              const std::string& log_path) {
    BoostConfig config = train_opts.resolve(data_opts.seed);

    std::optional<Dataset> train, valid;
    if (!data_opts.synthetic.empty()) {
        const std::size_t n = data_opts.synthetic[0];
        const std::size_t m = data_opts.synthetic.size() > 1 ? data_opts.synthetic[1] : 10;
        train.emplace(make_synthetic(n, m, data_opts.seed));
    } else if (!data_opts.train_path.empty()) {
        train.emplace(data_opts.load(data_opts.train_path, config.loss == LossKind::logloss));
    } else {
        throw DataError("train needs --train or --synthetic");
    }
    if (!data_opts.valid_path.empty())
        valid.emplace(data_opts.load(data_opts.valid_path, config.loss == LossKind::logloss));

    FitResult result = fit(*train, valid ? &*valid : nullptr, config);

    if (!model_path.empty()) save_model(result.model, model_path);
    if (!log_path.empty()) write_convergence_csv(log_path, result.records);

    const EvalResult train_eval = evaluate(result.model, *train);
    std::cout << "trained " << result.model.trees.size() << " trees (order " << config.order
              << ", lambda " << shortest(config.lambda) << ", eta "
              << shortest(config.learning_rate) << ")\n";
    std::printf("train loss %.6f  accuracy %.4f\n", train_eval.loss, train_eval.accuracy);
    if (valid) {
        const EvalResult v = evaluate(result.model, *valid);
        std::printf("valid loss %.6f  accuracy %.4f\n", v.loss, v.accuracy);
    }
    if (!result.records.empty())
        std::printf("training time %.1f ms\n", result.records.back().cumulative_time_ms);
    return 0;
}

int cmd_predict(DataOptions& data_opts, const std::string& model_path,
                const std::string& out_path, bool label_given) {
    const Model model = load_model(model_path);
    if (data_opts.test_path.empty()) throw DataError("predict needs --test");

    // With --label the input is a labeled CSV and that column is dropped;
    // otherwise every column is a feature.
    Dataset data = label_given
                       ? data_opts.load(data_opts.test_path, false)
                       : load_feature_csv(data_opts.test_path,
                                          data_opts.header_for(data_opts.test_path),
                                          data_opts.max_rows);

    const std::vector<double> raw = predict(model, data);
    const bool proba = model.config.loss == LossKind::logloss;
    const std::vector<double> p = proba ? predict_proba(model, data) : std::vector<double>{};

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw DataError("cannot write '" + out_path + "'");
        out = &file;
    }
    *out << (proba ? "raw_score,probability\n" : "raw_score\n");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        *out << shortest(raw[i]);
        if (proba) *out << ',' << shortest(p[i]);
        *out << '\n';
    }
    return 0;
}

int cmd_eval(DataOptions& data_opts, const std::string& model_path) {
    const Model model = load_model(model_path);
    if (data_opts.test_path.empty()) throw DataError("eval needs --test");
    const Dataset data =
        data_opts.load(data_opts.test_path, model.config.loss == LossKind::logloss);
    const EvalResult r = evaluate(model, data);
    std::printf("loss %.6f\naccuracy %.4f\n", r.loss, r.accuracy);
    return 0;
}

int cmd_benchmark(DataOptions& data_opts, TrainOptions& train_opts,
                  const std::vector<int>& orders, std::vector<double> lambda_grid,
                  std::vector<double> eta_grid, const std::string& report_path,
                  const std::string& log_prefix) {
    BenchmarkSettings settings;
    settings.base = train_opts.resolve(data_opts.seed);
    if (!orders.empty()) settings.orders = orders;
    if (!lambda_grid.empty()) settings.lambdas = std::move(lambda_grid);
    if (!eta_grid.empty()) settings.etas = std::move(eta_grid);
    settings.rounds_budget = settings.base.n_rounds;

    std::optional<Dataset> train, valid, test;
    if (!data_opts.synthetic.empty()) {
        const std::size_t n = data_opts.synthetic[0];
        const std::size_t m = data_opts.synthetic.size() > 1 ? data_opts.synthetic[1] : 10;
        const Dataset full = make_synthetic(n, m, data_opts.seed);
        // 70/15/15 split
        const std::size_t train_end = n * 70 / 100;
        const std::size_t valid_end = train_end + (n - train_end) / 2;
        train.emplace(dataset_slice(full, 0, train_end));
        valid.emplace(dataset_slice(full, train_end, valid_end));
        test.emplace(dataset_slice(full, valid_end, n));
    } else if (!data_opts.train_path.empty() && !data_opts.valid_path.empty() &&
               !data_opts.test_path.empty()) {
        const bool binary = settings.base.loss == LossKind::logloss;
        train.emplace(data_opts.load(data_opts.train_path, binary));
        valid.emplace(data_opts.load(data_opts.valid_path, binary));
        test.emplace(data_opts.load(data_opts.test_path, binary));
    } else {
        throw DataError("benchmark needs --synthetic or all of --train/--valid/--test");
    }

    const BenchmarkReport report = run_benchmark(*train, *valid, *test, settings);
    std::cout << format_report_table(report);

    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw DataError("cannot write '" + report_path + "'");
        out << report_to_csv(report);
    }
    if (!log_prefix.empty()) {
        for (const auto& c : report.configs) {
            const std::string path = log_prefix + "_o" + std::to_string(c.order) + "_lam" +
                                     shortest(c.lambda) + "_eta" + shortest(c.eta) + ".csv";
            write_convergence_csv(path, c.records);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"high-order gradient boosted decision trees"};
    app.require_subcommand(1);

    DataOptions data_opts;
    TrainOptions train_opts;
    std::string model_path, log_path, out_path, report_path;
    std::vector<int> orders;
    std::vector<double> lambda_grid, eta_grid;

    CLI::App* train = app.add_subcommand("train", "fit a model and write it to --model");
    data_opts.attach(train, true, true, false);
    train_opts.attach(train, true);
    train->add_option("--model", model_path, "output model path");
    train->add_option("--log", log_path, "convergence CSV output path");

    CLI::App* pred = app.add_subcommand("predict", "score a feature CSV with a saved model");
    data_opts.attach(pred, false, false, true);
    pred->add_option("--model", model_path, "model path")->required();
    pred->add_option("--out", out_path, "predictions CSV path (default: stdout)");

    CLI::App* eval = app.add_subcommand("eval", "loss and accuracy of a model on labeled data");
    data_opts.attach(eval, false, false, true);
    eval->add_option("--model", model_path, "model path")->required();

    CLI::App* bench = app.add_subcommand(
        "benchmark", "time-to-threshold comparison across optimization orders");
    data_opts.attach(bench, true, true, true);
    train_opts.attach(bench, false);
    bench->add_option("--order", orders, "orders to compare (repeat or comma-separate)")
        ->delimiter(',')
        ->check(CLI::IsMember({2, 3, 4}));
    bench->add_option("--lambda-grid", lambda_grid, "lambda sweep values")->delimiter(',');
    bench->add_option("--eta-grid", eta_grid, "learning-rate sweep values")->delimiter(',');
    bench->add_option("--report", report_path, "benchmark report CSV path");
    bench->add_option("--log", log_path, "prefix for per-config convergence CSVs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(data_opts, train_opts, model_path, log_path);
        if (pred->parsed())
            return cmd_predict(data_opts, model_path, out_path, pred->count("--label") > 0);
        if (eval->parsed()) return cmd_eval(data_opts, model_path);
        if (bench->parsed())
            return cmd_benchmark(data_opts, train_opts, orders, lambda_grid, eta_grid,
                                 report_path, log_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
