#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "hogboost/errors.hpp"
#include "hogboost/model_store.hpp"
#include "random_models.hpp"
#include "test_util.hpp"

using namespace hogboost;
using testutil::random_model;
using testutil::random_tree;
using testutil::TempDir;

TEST_CASE("round trip preserves predictions bitwise and reserializes identically") {
    std::mt19937_64 rng(2024);
    TempDir tmp;
    for (int trial = 0; trial < 12; ++trial) {
        const Model original = random_model(rng);
        const auto path = tmp.file("model_" + std::to_string(trial) + ".json");
        save_model(original, path);
        const Model loaded = load_model(path);

        CHECK(loaded.base_score == original.base_score);
        CHECK(loaded.feature_count == original.feature_count);
        REQUIRE(loaded.trees.size() == original.trees.size());

        // document identity: serialize(parse(serialize(m))) == serialize(m)
        CHECK(serialize_model(loaded) == serialize_model(original));

        std::vector<double> row(original.feature_count);
        for (int probe = 0; probe < 200; ++probe) {
            for (auto& v : row) v = testutil::uniform(rng, -200, 200);
            double a = original.base_score, b = loaded.base_score;
            for (std::size_t t = 0; t < original.trees.size(); ++t) {
                a += 0.25 * original.trees[t].predict(row);
                b += 0.25 * loaded.trees[t].predict(row);
            }
            CHECK(std::memcmp(&a, &b, sizeof a) == 0);
        }
    }
}

TEST_CASE("empty model round trips to a constant predictor") {
    Model m;
    m.feature_count = 3;
    m.base_score = -0.75;
    TempDir tmp;
    const auto path = tmp.file("empty.json");
    save_model(m, path);
    const Model loaded = load_model(path);
    CHECK(loaded.trees.empty());
    CHECK(loaded.base_score == -0.75);
}

TEST_CASE("config fields survive the round trip") {
    Model m;
    m.feature_count = 2;
    m.config.order = 4;
    m.config.cubic_mode = CubicMode::series;
    m.config.fourth_order_formula = FourthOrderFormula::paper_literal;
    m.config.loss = LossKind::squared_error;
    m.config.lambda = 17.5;
    m.config.min_child_rows = 9;
    m.config.early_stop_rounds = 12;
    m.config.base_score = 0.125;
    m.config.seed = 0xdeadbeefcafeULL;

    const Model loaded = parse_model(serialize_model(m));
    CHECK(loaded.config.order == 4);
    CHECK(loaded.config.cubic_mode == CubicMode::series);
    CHECK(loaded.config.fourth_order_formula == FourthOrderFormula::paper_literal);
    CHECK(loaded.config.loss == LossKind::squared_error);
    CHECK(loaded.config.lambda == 17.5);
    CHECK(loaded.config.min_child_rows == 9);
    CHECK(loaded.config.early_stop_rounds == 12);
    CHECK(loaded.config.base_score == 0.125);
    CHECK(loaded.config.seed == 0xdeadbeefcafeULL);
}

TEST_CASE("format gate and schema errors") {
    Model m;
    m.feature_count = 1;
    Tree t;
    t.n_features = 1;
    t.nodes.push_back(TreeNode{});
    t.nodes[0].weight = 1.5;
    t.n_leaves = 1;
    m.trees.push_back(t);
    const std::string good = serialize_model(m);

    SUBCASE("valid minimal document loads") {
        const Model loaded = parse_model(good);
        CHECK(loaded.trees.size() == 1);
        CHECK(loaded.trees[0].nodes[0].weight == 1.5);
    }
    SUBCASE("unknown format_version") {
        std::string doc = good;
        const auto pos = doc.find("\"format_version\": 1");
        REQUIRE(pos != std::string::npos);
        doc.replace(pos, 19, "\"format_version\": 2");
        CHECK_THROWS_WITH_AS(parse_model(doc), doctest::Contains("format_version"),
                             ModelFormatError);
    }
    SUBCASE("truncated document") {
        CHECK_THROWS_AS(parse_model(good.substr(0, good.size() / 2)), ModelFormatError);
    }
    SUBCASE("split node missing its right child") {
        const std::string doc = R"({
          "format_version": 1, "base_score": 0.0, "feature_count": 1,
          "config": {"n_rounds": 1, "learning_rate": 0.1, "order": 2, "lambda": 1.0,
                     "max_depth": 6, "min_child_rows": 1, "min_gain": 0.0,
                     "loss": "logloss", "cubic_mode": "halley",
                     "fourth_order_formula": "classical", "trust_alpha": 1.0,
                     "early_stop_rounds": null, "seed": 0, "base_score": null},
          "trees": [{"type": "split", "feature": 0, "threshold": 1.0,
                     "left": {"type": "leaf", "weight": 1.0, "row_count": 1}}]
        })";
        CHECK_THROWS_WITH_AS(parse_model(doc), doctest::Contains("right"), ModelFormatError);
    }
    SUBCASE("non-finite weight is rejected") {
        std::string doc = good;
        const auto pos = doc.find("\"weight\": 1.5");
        REQUIRE(pos != std::string::npos);
        doc.replace(pos, 13, "\"weight\": null");
        CHECK_THROWS_AS(parse_model(doc), ModelFormatError);
    }
    SUBCASE("feature index out of range") {
        const std::string doc = R"({
          "format_version": 1, "base_score": 0.0, "feature_count": 1,
          "config": {"n_rounds": 1, "learning_rate": 0.1, "order": 2, "lambda": 1.0,
                     "max_depth": 6, "min_child_rows": 1, "min_gain": 0.0,
                     "loss": "logloss", "cubic_mode": "halley",
                     "fourth_order_formula": "classical", "trust_alpha": 1.0,
                     "early_stop_rounds": null, "seed": 0, "base_score": null},
          "trees": [{"type": "split", "feature": 3, "threshold": 1.0,
                     "left": {"type": "leaf", "weight": 1.0, "row_count": 1},
                     "right": {"type": "leaf", "weight": -1.0, "row_count": 1}}]
        })";
        CHECK_THROWS_WITH_AS(parse_model(doc), doctest::Contains("out of range"),
                             ModelFormatError);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(load_model("/no/such/file.json"), DataError); }
}

TEST_CASE("loaded trees report reconstructed shape") {
    std::mt19937_64 rng(31);
    const Model m = [&] {
        Model model;
        model.feature_count = 4;
        model.trees.push_back(random_tree(rng, 4, 3));
        return model;
    }();
    const Model loaded = parse_model(serialize_model(m));
    CHECK(loaded.trees[0].n_leaves == m.trees[0].n_leaves);
    CHECK(loaded.trees[0].depth == m.trees[0].depth);
    CHECK(loaded.trees[0].n_features == 4);
}
