#include "hdiforest/dataset.hpp"
#include "hdiforest/error.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace hdiforest;
using hdiforest::testing::TempDir;

TEST(LoadCsv, ParsesHeaderAndDropsTargetColumn) {
    TempDir dir;
    const auto path = dir.write("small.csv", "a,b,y\n1,2,3\n4,5,6\n7,8,9\n");
    const Dataset d = load_csv(path, std::string("y"));
    EXPECT_EQ(d.n_rows(), 3u);
    EXPECT_EQ(d.n_features(), 2u);
    EXPECT_EQ(d.column_names(), (std::vector<std::string>{"a", "b"}));
    EXPECT_DOUBLE_EQ(d.feature(1, 0), 4.0);
    EXPECT_DOUBLE_EQ(d.feature(2, 1), 8.0);
    EXPECT_EQ(std::vector<double>(d.targets().begin(), d.targets().end()), (std::vector<double>{3, 6, 9}));
}

TEST(LoadCsv, TargetByIndexAndMiddleColumn) {
    TempDir dir;
    const auto path = dir.write("mid.csv", "a,t,b\r\n1,10,2\r\n3,20,4\r\n");
    const Dataset d = load_csv(path, std::size_t{1});
    EXPECT_EQ(d.n_features(), 2u);
    EXPECT_DOUBLE_EQ(d.targets()[1], 20.0);
    EXPECT_DOUBLE_EQ(d.feature(1, 1), 4.0);
}

TEST(LoadCsv, BlankCellNamesRowAndColumn) {
    TempDir dir;
    const auto path = dir.write("blank.csv", "a,b,y\n1,2,3\n4,,6\n");
    try {
        load_csv(path, std::string("y"));
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
        EXPECT_NE(msg.find("'b'"), std::string::npos) << msg;
    }
}

TEST(LoadCsv, RejectsBadInputs) {
    TempDir dir;
    EXPECT_THROW(load_csv(dir / "missing.csv", std::string("y")), DataError);
    EXPECT_THROW(load_csv(dir.write("text.csv", "a,y\n1,2\nfoo,3\n"), std::string("y")), DataError);
    EXPECT_THROW(load_csv(dir.write("nan.csv", "a,y\n1,2\nnan,3\n"), std::string("y")), DataError);
    EXPECT_THROW(load_csv(dir.write("inf.csv", "a,y\n1,2\n3,inf\n"), std::string("y")), DataError);
    EXPECT_THROW(load_csv(dir.write("one.csv", "a,y\n1,2\n"), std::string("y")), DataError);
    EXPECT_THROW(load_csv(dir.write("ok.csv", "a,y\n1,2\n3,4\n"), std::string("z")), DataError);
    EXPECT_THROW(load_csv(dir.write("ok2.csv", "a,y\n1,2\n3,4\n"), std::size_t{5}), DataError);
    EXPECT_THROW(load_csv(dir.write("ragged.csv", "a,y\n1,2\n3\n"), std::string("y")), DataError);
}

TEST(LoadCsv, BostonHousingShape) {
    const Dataset d = load_csv(std::string(HDIFOREST_DATA_DIR) + "/boston.csv", std::string("medv"));
    EXPECT_EQ(d.n_rows(), 506u);
    EXPECT_EQ(d.n_features(), 13u);
}

TEST(Split, SizesAndDisjointness) {
    const Dataset d = hdiforest::testing::random_dataset(10, 2, 1);
    const auto parts = split(d, 0.2, 7);
    EXPECT_EQ(parts.train.n_rows(), 8u);
    EXPECT_EQ(parts.test.n_rows(), 2u);
    std::set<std::size_t> all(parts.train_rows.begin(), parts.train_rows.end());
    for (std::size_t r : parts.test_rows) EXPECT_TRUE(all.insert(r).second) << "row " << r << " on both sides";
    EXPECT_EQ(all.size(), 10u);
    for (std::size_t i = 0; i < parts.test.n_rows(); ++i) {
        EXPECT_EQ(parts.test.targets()[i], d.targets()[parts.test_rows[i]]);
    }
}

TEST(Split, BostonSizes) {
    const Dataset d = hdiforest::testing::random_dataset(506, 1, 3);
    const auto parts = split(d, 0.2, 42);
    EXPECT_EQ(parts.test.n_rows(), 101u);
    EXPECT_EQ(parts.train.n_rows(), 405u);
}

TEST(Split, DeterministicPerSeed) {
    const Dataset d = hdiforest::testing::random_dataset(50, 2, 5);
    for (std::uint64_t seed : {0ull, 1ull, 99ull, 123456789ull}) {
        const auto a = split(d, 0.3, seed);
        const auto b = split(d, 0.3, seed);
        EXPECT_EQ(a.train_rows, b.train_rows);
        EXPECT_EQ(a.test_rows, b.test_rows);
    }
    EXPECT_NE(split(d, 0.3, 1).test_rows, split(d, 0.3, 2).test_rows);
}

TEST(Split, FrozenPermutation) {
    // Guards the documented generator: mt19937_64 + rejection sampling +
    // Fisher-Yates must not drift between builds.
    const Dataset d = hdiforest::testing::random_dataset(10, 1, 1);
    const auto parts = split(d, 0.5, 2024);
    std::vector<std::size_t> all = parts.test_rows;
    all.insert(all.end(), parts.train_rows.begin(), parts.train_rows.end());
    std::vector<std::size_t> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> iota(10);
    std::iota(iota.begin(), iota.end(), 0u);
    EXPECT_EQ(sorted, iota);
    const auto again = split(d, 0.5, 2024);
    EXPECT_EQ(again.test_rows, parts.test_rows);
    EXPECT_EQ(parts.test_rows, (std::vector<std::size_t>{1, 3, 6, 0, 2}));
    EXPECT_EQ(parts.train_rows, (std::vector<std::size_t>{8, 7, 5, 9, 4}));
}

TEST(Split, RejectsDegenerateFractions) {
    const Dataset d = hdiforest::testing::random_dataset(4, 1, 1);
    EXPECT_THROW(split(d, 0.1, 1), std::invalid_argument);   // floor(0.4) = 0 test rows
    EXPECT_THROW(split(d, 0.75, 1), std::invalid_argument);  // 1 training row
    EXPECT_THROW(split(d, 0.0, 1), std::invalid_argument);
    EXPECT_THROW(split(d, 1.0, 1), std::invalid_argument);
    EXPECT_NO_THROW(split(d, 0.5, 1));
}

TEST(Standardize, ClosedFormPopulationStd) {
    const Dataset d({0.0, 1.0, 2.0}, 1, {1.0, 2.0, 3.0});
    const auto [z, params] = standardize_targets(d);
    EXPECT_DOUBLE_EQ(params.target_mean, 2.0);
    EXPECT_NEAR(params.target_std, std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(z.targets()[0], -1.224744871391589, 1e-12);
    EXPECT_NEAR(z.targets()[1], 0.0, 1e-15);
    EXPECT_NEAR(z.targets()[2], 1.224744871391589, 1e-12);
}

TEST(Standardize, IdempotentOnStandardizedTargets) {
    const Dataset d = hdiforest::testing::random_dataset(200, 2, 11);
    const auto [z, first] = standardize_targets(d);
    const auto [zz, second] = standardize_targets(z);
    EXPECT_NEAR(second.target_mean, 0.0, 1e-12);
    EXPECT_NEAR(second.target_std, 1.0, 1e-12);
}

TEST(Standardize, ZeroVarianceIsAnError) {
    const Dataset d({0.0, 1.0, 2.0}, 1, {5.0, 5.0, 5.0});
    EXPECT_THROW(standardize_targets(d), DataError);
}

TEST(Standardize, MeanZeroStdOneAndRoundTrip) {
    std::mt19937_64 engine(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::lognormal_distribution<double> scale(0.0, 4.0);
        std::normal_distribution<double> noise(scale(engine), scale(engine));
        std::vector<double> y(2 + engine() % 300);
        for (auto& v : y) v = noise(engine);
        const Dataset d(std::vector<double>(y.size(), 0.0), 1, y);
        const auto [z, params] = standardize_targets(d);

        double mean = 0.0;
        for (double v : z.targets()) mean += v;
        mean /= static_cast<double>(y.size());
        double var = 0.0;
        for (double v : z.targets()) var += (v - mean) * (v - mean);
        EXPECT_NEAR(mean, 0.0, 1e-9);
        EXPECT_NEAR(std::sqrt(var / static_cast<double>(y.size())), 1.0, 1e-9);

        for (std::size_t i = 0; i < y.size(); ++i) {
            const double back = params.invert(z.targets()[i]);
            EXPECT_LE(std::fabs(back - y[i]), 1e-9 * std::max(1.0, std::fabs(y[i])));
        }
    }
}

TEST(Standardize, TestSetUsesTrainingParams) {
    const Dataset train({0, 1, 2, 3}, 1, {1.0, 2.0, 3.0, 4.0});
    const Dataset test({0, 1}, 1, {10.0, 20.0});
    const auto [z, params] = standardize_targets(train);
    const Dataset zt = apply_standardization(test, params);
    EXPECT_DOUBLE_EQ(zt.targets()[0], (10.0 - 2.5) / params.target_std);
}

TEST(DatasetType, RejectsInconsistentShapes) {
    EXPECT_THROW(Dataset({1.0, 2.0, 3.0}, 2, {1.0, 2.0}), DataError);
    EXPECT_THROW(Dataset({1.0, 2.0}, 0, {1.0, 2.0}), DataError);
    EXPECT_THROW(Dataset({1.0, std::nan("")}, 1, {1.0, 2.0}), DataError);
}
