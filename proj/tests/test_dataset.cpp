#include <doctest.h>

#include <cmath>
#include <cstring>

#include "hogboost/dataset.hpp"
#include "hogboost/errors.hpp"
#include "test_util.hpp"

using namespace hogboost;
using testutil::TempDir;

TEST_CASE("load_csv reads a small labeled file") {
    TempDir tmp;
    const auto path = tmp.file("small.csv");
    testutil::write_file(path, "a,b,label\n1.5,2.5,0\n-1,0.25,1\n3,4,1\n");

    const Dataset d = load_csv(path, LabelColumn{"label"}, true);
    CHECK(d.n_rows() == 3);
    CHECK(d.n_features() == 2);
    CHECK(d.value(0, 0) == 1.5);
    CHECK(d.value(1, 2) == 4.0);
    CHECK(d.label(0) == 0.0);
    CHECK(d.label(1) == 1.0);
    CHECK(d.labels_are_binary());
}

TEST_CASE("load_csv resolves the label column by index without a header") {
    TempDir tmp;
    const auto path = tmp.file("noheader.csv");
    testutil::write_file(path, "1,0,10\n2,1,20\n");
    const Dataset d = load_csv(path, LabelColumn{"1"}, false);
    CHECK(d.n_features() == 2);
    CHECK(d.label(0) == 0.0);
    CHECK(d.value(1, 1) == 20.0);
}

TEST_CASE("load_csv errors") {
    TempDir tmp;
    const auto path = tmp.file("bad.csv");

    SUBCASE("empty cell is a missing-value error") {
        testutil::write_file(path, "a,label\n1,,\n");
        CHECK_THROWS_AS(load_csv(path, LabelColumn{"label"}, true), DataError);
        testutil::write_file(path, "a,label\n,1\n");
        CHECK_THROWS_WITH_AS(load_csv(path, LabelColumn{"label"}, true),
                             doctest::Contains("missing value"), DataError);
    }
    SUBCASE("non-numeric cell") {
        testutil::write_file(path, "a,label\nx,1\n");
        CHECK_THROWS_WITH_AS(load_csv(path, LabelColumn{"label"}, true),
                             doctest::Contains("non-numeric"), DataError);
    }
    SUBCASE("nan and inf are rejected") {
        testutil::write_file(path, "a,label\nnan,1\n");
        CHECK_THROWS_AS(load_csv(path, LabelColumn{"label"}, true), DataError);
        testutil::write_file(path, "a,label\ninf,0\n");
        CHECK_THROWS_AS(load_csv(path, LabelColumn{"label"}, true), DataError);
    }
    SUBCASE("ragged row") {
        testutil::write_file(path, "a,b,label\n1,2,0\n1,2\n");
        CHECK_THROWS_WITH_AS(load_csv(path, LabelColumn{"label"}, true),
                             doctest::Contains("malformed"), DataError);
    }
    SUBCASE("label outside {0,1} with binary check") {
        testutil::write_file(path, "a,label\n1,2\n");
        CHECK_THROWS_WITH_AS(load_csv(path, LabelColumn{"label"}, true, 0, true),
                             doctest::Contains("outside {0, 1}"), DataError);
        CHECK_NOTHROW(load_csv(path, LabelColumn{"label"}, true, 0, false));
    }
    SUBCASE("unknown label column") {
        testutil::write_file(path, "a,label\n1,0\n");
        CHECK_THROWS_AS(load_csv(path, LabelColumn{"zzz"}, true), DataError);
    }
    SUBCASE("no data rows") {
        testutil::write_file(path, "a,label\n");
        CHECK_THROWS_AS(load_csv(path, LabelColumn{"label"}, true), DataError);
    }
}

TEST_CASE("max_rows limits ingestion") {
    TempDir tmp;
    const auto path = tmp.file("many.csv");
    std::string text = "a,label\n";
    for (int i = 0; i < 50; ++i) text += std::to_string(i) + ",0\n";
    testutil::write_file(path, text);
    CHECK(load_csv(path, LabelColumn{"label"}, true, 7).n_rows() == 7);
}

TEST_CASE("sort_index orders each column, ties keep row order") {
    const Dataset d({{3.0, 1.0, 2.0}, {5.0, 5.0, 4.0}}, {0, 1, 1});
    const auto s0 = d.sort_index(0);
    CHECK(s0[0] == 1);
    CHECK(s0[1] == 2);
    CHECK(s0[2] == 0);
    const auto s1 = d.sort_index(1);
    CHECK(s1[0] == 2);
    CHECK(s1[1] == 0); // tie 5.0: row 0 before row 1
    CHECK(s1[2] == 1);
}

TEST_CASE("sorted-scan property holds for every feature") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const Dataset d = testutil::random_dataset(rng, 200, 6);
        for (std::size_t f = 0; f < d.n_features(); ++f) {
            double prev = -1e300;
            for (std::uint32_t r : d.sort_index(f)) {
                CHECK(d.value(f, r) >= prev);
                prev = d.value(f, r);
            }
        }
    }
}

TEST_CASE("csv round trip is bitwise") {
    // awkward values: non-terminating decimals, subnormal, huge, negative zero
    const std::vector<double> col0 = {0.1 + 0.2, 1.0 / 3.0, 4.9e-324, -0.0, 1.7976931348623157e308};
    const std::vector<double> col1 = {-1e-300, 2.2250738585072014e-308, 0.30000000000000004, 7, -12.75};
    const std::vector<double> labels = {0, 1, 1, 0, 1};
    const Dataset d({col0, col1}, labels);

    TempDir tmp;
    const auto path = tmp.file("round.csv");
    save_csv(d, path);
    const Dataset back = load_csv(path, LabelColumn{"label"}, true);

    REQUIRE(back.n_rows() == d.n_rows());
    REQUIRE(back.n_features() == d.n_features());
    for (std::size_t f = 0; f < d.n_features(); ++f)
        for (std::size_t r = 0; r < d.n_rows(); ++r) {
            const double a = d.value(f, r), b = back.value(f, r);
            CHECK(std::memcmp(&a, &b, sizeof a) == 0);
        }
    for (std::size_t r = 0; r < d.n_rows(); ++r) CHECK(back.label(r) == d.label(r));
}

TEST_CASE("make_synthetic is deterministic per seed") {
    const Dataset a = make_synthetic(1000, 10, 42);
    const Dataset b = make_synthetic(1000, 10, 42);
    const Dataset c = make_synthetic(1000, 10, 43);

    bool identical = true;
    for (std::size_t f = 0; f < 10; ++f)
        for (std::size_t r = 0; r < 1000; ++r)
            identical &= a.value(f, r) == b.value(f, r);
    for (std::size_t r = 0; r < 1000; ++r) identical &= a.label(r) == b.label(r);
    CHECK(identical);

    bool differs = false;
    for (std::size_t f = 0; f < 10 && !differs; ++f)
        for (std::size_t r = 0; r < 1000 && !differs; ++r)
            differs = a.value(f, r) != c.value(f, r);
    CHECK(differs);
}

TEST_CASE("make_synthetic boundary and label sanity") {
    CHECK_NOTHROW(make_synthetic(2, 1, 9));
    CHECK_THROWS_AS(make_synthetic(1, 1, 9), DataError);
    CHECK_THROWS_AS(make_synthetic(10, 0, 9), DataError);

    const Dataset d = make_synthetic(4000, 6, 3);
    CHECK(d.labels_are_binary());
    // roughly balanced classes
    double mean = 0;
    for (std::size_t r = 0; r < d.n_rows(); ++r) mean += d.label(r);
    mean /= static_cast<double>(d.n_rows());
    CHECK(mean > 0.3);
    CHECK(mean < 0.7);
}

TEST_CASE("load_feature_csv reads unlabeled inputs") {
    TempDir tmp;
    const auto path = tmp.file("features.csv");
    testutil::write_file(path, "1,2\n3,4\n");
    const Dataset d = load_feature_csv(path, false);
    CHECK(d.n_features() == 2);
    CHECK(d.n_rows() == 2);
    CHECK(d.value(1, 1) == 4.0);
}
