#include <doctest.h>

#include <charconv>
#include <sstream>

#include "hogboost/booster.hpp"
#include "hogboost/dataset.hpp"
#include "hogboost/model_store.hpp"
#include "test_util.hpp"

using namespace hogboost;
using testutil::TempDir;
using testutil::run_command;

namespace {

const std::string cli = HOGBOOST_CLI_PATH;

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find(',', start);
            cells.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_CASE("train writes a model and a convergence log") {
    TempDir tmp;
    const auto model = tmp.file("m.json");
    const auto log = tmp.file("log.csv");
    const auto r = run_command(cli + " train --synthetic 500,6 --seed 7 --order 3 --rounds 20" +
                               " --eta 0.3 --model " + model + " --log " + log);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("trained 20 trees") != std::string::npos);

    const auto rows = parse_csv(testutil::read_file(log));
    REQUIRE(rows.size() == 21); // header + 20 rounds
    CHECK(rows[0][0] == "round");
    CHECK(rows[0][4] == "cumulative_time_ms");
    CHECK(rows[1][0] == "1");
    CHECK(rows[20][0] == "20");

    // valid columns empty without --valid
    CHECK(rows[1][2].empty());
    CHECK(rows[1][3].empty());

    // time column non-decreasing
    double prev = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double t = std::stod(rows[i][4]);
        CHECK(t >= prev);
        prev = t;
    }

    const Model m = load_model(model);
    CHECK(m.trees.size() == 20);
    CHECK(m.config.order == 3);
}

TEST_CASE("bad flags exit nonzero") {
    CHECK(run_command(cli + " train --synthetic 100,3 --order 5").exit_code != 0);
    CHECK(run_command(cli + " train").exit_code != 0); // no data source
    CHECK(run_command(cli + " nonsense").exit_code != 0);
    CHECK(run_command(cli + " eval --model /no/such.json --test /no/such.csv").exit_code != 0);
    CHECK(run_command(cli + " predict --model /missing.json --test x.csv").exit_code != 0);
}

TEST_CASE("repeated seeds give byte-identical models and loss columns") {
    TempDir tmp;
    const std::string flags = " train --synthetic 800,8 --seed 42 --order 4 --rounds 25 --eta 0.3";
    const auto m1 = tmp.file("a.json"), m2 = tmp.file("b.json");
    const auto l1 = tmp.file("a.csv"), l2 = tmp.file("b.csv");
    CHECK(run_command(cli + flags + " --model " + m1 + " --log " + l1).exit_code == 0);
    CHECK(run_command(cli + flags + " --model " + m2 + " --log " + l2).exit_code == 0);

    CHECK(testutil::read_file(m1) == testutil::read_file(m2));
    CHECK(!testutil::read_file(m1).empty());

    const auto a = parse_csv(testutil::read_file(l1));
    const auto b = parse_csv(testutil::read_file(l2));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 1; i < a.size(); ++i) {
        CHECK(a[i][0] == b[i][0]); // round
        CHECK(a[i][1] == b[i][1]); // train_loss, full-precision string
        CHECK(a[i][5] == b[i][5]); // fallback_count
    }
}

TEST_CASE("predict matches in-process prediction bitwise") {
    TempDir tmp;
    const Dataset data = make_synthetic(300, 5, 11);
    const auto csv = tmp.file("data.csv");
    save_csv(data, csv);

    const auto model_path = tmp.file("m.json");
    CHECK(run_command(cli + " train --train " + csv + " --label label --rounds 15 --order 3" +
                      " --seed 3 --model " + model_path)
              .exit_code == 0);

    const auto out = tmp.file("preds.csv");
    CHECK(run_command(cli + " predict --model " + model_path + " --test " + csv +
                      " --label label --out " + out)
              .exit_code == 0);

    const Model model = load_model(model_path);
    const auto expected = predict(model, data);
    const auto expected_proba = predict_proba(model, data);

    const auto rows = parse_csv(testutil::read_file(out));
    REQUIRE(rows.size() == data.n_rows() + 1);
    CHECK(rows[0][0] == "raw_score");
    CHECK(rows[0][1] == "probability");
    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        double raw = 0, proba = 0;
        std::from_chars(rows[i + 1][0].data(), rows[i + 1][0].data() + rows[i + 1][0].size(), raw);
        std::from_chars(rows[i + 1][1].data(), rows[i + 1][1].data() + rows[i + 1][1].size(), proba);
        CHECK(raw == expected[i]);
        CHECK(proba == expected_proba[i]);
    }
}

TEST_CASE("eval matches in-process evaluation") {
    TempDir tmp;
    const Dataset data = make_synthetic(400, 4, 19);
    const auto csv = tmp.file("data.csv");
    save_csv(data, csv);
    const auto model_path = tmp.file("m.json");
    CHECK(run_command(cli + " train --train " + csv + " --rounds 10 --seed 5 --model " +
                      model_path)
              .exit_code == 0);

    const auto r = run_command(cli + " eval --model " + model_path + " --test " + csv);
    CHECK(r.exit_code == 0);

    const EvalResult expected = evaluate(load_model(model_path), data);
    char line[128];
    std::snprintf(line, sizeof line, "loss %.6f", expected.loss);
    CHECK(r.output.find(line) != std::string::npos);
    std::snprintf(line, sizeof line, "accuracy %.4f", expected.accuracy);
    CHECK(r.output.find(line) != std::string::npos);
}

TEST_CASE("feature-count mismatch is a clean error") {
    TempDir tmp;
    const Dataset data = make_synthetic(100, 4, 23);
    const auto csv = tmp.file("d.csv");
    save_csv(data, csv);
    const auto model_path = tmp.file("m.json");
    CHECK(run_command(cli + " train --train " + csv + " --rounds 3 --model " + model_path)
              .exit_code == 0);

    const Dataset narrow = make_synthetic(50, 2, 23);
    const auto narrow_csv = tmp.file("narrow.csv");
    save_csv(narrow, narrow_csv);
    const auto r = run_command(cli + " predict --model " + model_path + " --test " + narrow_csv +
                               " --label label");
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("features") != std::string::npos);
}

TEST_CASE("benchmark smoke run") {
    TempDir tmp;
    const auto report = tmp.file("report.csv");
    const auto prefix = tmp.file("curve");
    const auto r = run_command(cli + " benchmark --synthetic 600,5 --seed 13 --rounds 12" +
                               " --order 2,3 --lambda-grid 1 --eta-grid 0.5 --max-depth 3" +
                               " --report " + report + " --log " + prefix);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("GBDT-2") != std::string::npos);
    CHECK(r.output.find("GBDT-3") != std::string::npos);
    CHECK(r.output.find("reference best accuracy") != std::string::npos);

    const auto rows = parse_csv(testutil::read_file(report));
    REQUIRE(rows.size() == 3); // header + 2 configs
    CHECK(rows[0][0] == "order");

    // order-2 reference reaches its own threshold; its gap is exactly 0
    REQUIRE(rows[1][0] == "2");
    CHECK(rows[1][5] != "not_reached");
    CHECK(std::stod(rows[1][7]) == 0.0);

    // per-config convergence curves exist with the documented header
    const auto curve = testutil::read_file(prefix + "_o2_lam1_eta0.5.csv");
    CHECK(curve.find("round,train_loss,valid_loss,valid_accuracy,cumulative_time_ms,"
                     "fallback_count") == 0);
}

TEST_CASE("train accepts a validation set and logs its columns") {
    TempDir tmp;
    const Dataset train = make_synthetic(400, 5, 29);
    const Dataset valid = make_synthetic(200, 5, 30);
    const auto train_csv = tmp.file("train.csv"), valid_csv = tmp.file("valid.csv");
    save_csv(train, train_csv);
    save_csv(valid, valid_csv);
    const auto log = tmp.file("log.csv");
    const auto r = run_command(cli + " train --train " + train_csv + " --valid " + valid_csv +
                               " --rounds 8 --log " + log);
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(testutil::read_file(log));
    REQUIRE(rows.size() == 9);
    CHECK(!rows[1][2].empty());
    CHECK(!rows[1][3].empty());
    const double acc = std::stod(rows[8][3]);
    CHECK(acc >= 0.0);
    CHECK(acc <= 1.0);
}
