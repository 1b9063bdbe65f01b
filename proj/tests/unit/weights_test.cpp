#include "hdiforest/weights.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hdiforest;

namespace {

SupportDistribution uniform_five() { return make_support_distribution({1, 2, 3, 4, 5}, {0.2, 0.2, 0.2, 0.2, 0.2}); }

Tree single_leaf(std::vector<std::size_t> members) { return Tree({LeafNode{0, std::move(members), 0.0}}, 1); }

}  // namespace

TEST(TreeWeights, SingleLeafSharesEvenly) {
    const WeightVector w = tree_weights(single_leaf({0, 1, 2}), std::vector<double>{0.0});
    ASSERT_EQ(w.entries.size(), 3u);
    for (const auto& [row, weight] : w.entries) EXPECT_DOUBLE_EQ(weight, 1.0 / 3.0);
}

TEST(TreeWeights, SingletonLeafGetsAllMass) {
    const Tree stump({InternalNode{0, 1.5, 1, 2}, LeafNode{0, {0, 1}, 0}, LeafNode{1, {2}, 0}}, 1);
    const WeightVector w = tree_weights(stump, std::vector<double>{3.0});
    ASSERT_EQ(w.entries.size(), 1u);
    EXPECT_EQ(w.entries[0].first, 2u);
    EXPECT_EQ(w.entries[0].second, 1.0);
}

TEST(TreeWeights, SumToOneForEveryLeafSize) {
    for (std::size_t k = 1; k <= 64; ++k) {
        std::vector<std::size_t> members(k);
        std::iota(members.begin(), members.end(), std::size_t{0});
        EXPECT_NEAR(tree_weights(single_leaf(members), std::vector<double>{0.0}).total(), 1.0, 1e-15);
    }
}

TEST(ForestWeights, MeanOfTreeWeights) {
    Tree b({InternalNode{0, 10.0, 1, 2}, LeafNode{0, {0, 1}, 0}, LeafNode{1, {2}, 0}}, 1);
    Tree a_full({InternalNode{0, 10.0, 1, 2}, LeafNode{0, {0}, 0}, LeafNode{1, {1, 2}, 0}}, 1);
    const Forest forest({a_full, b}, {0.0, 1.0, 2.0}, {0.0, 1.0}, 1);
    const WeightVector w = forest_weights(forest, std::vector<double>{0.0});
    ASSERT_EQ(w.entries.size(), 2u);
    EXPECT_DOUBLE_EQ(w.at(0), 0.75);
    EXPECT_DOUBLE_EQ(w.at(1), 0.25);
    EXPECT_EQ(w.at(2), 0.0);
}

TEST(ForestWeights, IdenticalTreesMatchOneTree) {
    const Tree t({InternalNode{0, 0.0, 1, 2}, LeafNode{0, {0, 2, 4}, 0}, LeafNode{1, {1, 3}, 0}}, 1);
    const Forest forest({t, t, t, t, t, t, t}, {0, 1, 2, 3, 4}, {0.0, 1.0}, 1);
    const std::vector<double> x{-1.0};
    const WeightVector single = tree_weights(t, x);
    const WeightVector many = forest_weights(forest, x);
    ASSERT_EQ(single.entries.size(), many.entries.size());
    for (std::size_t i = 0; i < single.entries.size(); ++i) {
        EXPECT_EQ(single.entries[i].first, many.entries[i].first);
        EXPECT_NEAR(single.entries[i].second, many.entries[i].second, 1e-15);
    }
}

TEST(ForestWeights, RandomForestsAreNormalized) {
    std::mt19937_64 engine(5);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const Dataset d = hdiforest::testing::random_dataset(300, 3, 21);
    const Forest forest = fit_forest(d, {50, 2, 2}, 8);
    for (int q = 0; q < 50; ++q) {
        const std::vector<double> x{u(engine), u(engine), u(engine)};
        const WeightVector w = forest_weights(forest, x);
        EXPECT_NEAR(w.total(), 1.0, 1e-9);
        for (std::size_t i = 0; i < w.entries.size(); ++i) {
            EXPECT_GT(w.entries[i].second, 0.0);
            EXPECT_LT(w.entries[i].first, 300u);
            if (i > 0) EXPECT_LT(w.entries[i - 1].first, w.entries[i].first);
        }
    }
}

TEST(SupportDistribution, CollapsesDuplicateResponses) {
    const WeightVector w{{{0, 0.5}, {1, 0.5}}};
    const auto sd = support_distribution(w, std::vector<double>{2.0, 2.0});
    EXPECT_EQ(sd.support, (std::vector<double>{2.0}));
    EXPECT_EQ(sd.weights, (std::vector<double>{1.0}));
}

TEST(SupportDistribution, SortsByResponse) {
    const WeightVector w{{{0, 0.3}, {1, 0.7}}};
    const auto sd = support_distribution(w, std::vector<double>{5.0, 1.0});
    EXPECT_EQ(sd.support, (std::vector<double>{1.0, 5.0}));
    EXPECT_EQ(sd.weights, (std::vector<double>{0.7, 0.3}));
}

TEST(SupportDistribution, ZeroWeightRowsDoNotEnterSupport) {
    const WeightVector w{{{0, 0.0}, {1, 1.0}}};
    const auto sd = support_distribution(w, std::vector<double>{-3.0, 4.0});
    EXPECT_EQ(sd.support, (std::vector<double>{4.0}));
}

TEST(SupportDistribution, PreservesMassAndFirstMoment) {
    std::mt19937_64 engine(44);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> targets(100);
        for (auto& y : targets) y = std::floor(u(engine) * 20.0) / 4.0;  // heavy duplication
        WeightVector w;
        double total = 0.0;
        for (std::size_t i = 0; i < 100; ++i) {
            if (engine() % 3 == 0) continue;
            w.entries.emplace_back(i, u(engine));
            total += w.entries.back().second;
        }
        if (w.entries.empty()) w.entries.emplace_back(0, total = 1.0);
        for (auto& e : w.entries) e.second /= total;

        const auto sd = support_distribution(w, targets);
        double mass = 0.0;
        double moment = 0.0;
        for (std::size_t k = 0; k < sd.size(); ++k) {
            if (k > 0) EXPECT_LT(sd.support[k - 1], sd.support[k]);
            EXPECT_GE(sd.weights[k], 0.0);
            mass += sd.weights[k];
            moment += sd.weights[k] * sd.support[k];
        }
        double direct = 0.0;
        for (const auto& [row, weight] : w.entries) direct += weight * targets[row];
        EXPECT_NEAR(mass, 1.0, 1e-9);
        EXPECT_NEAR(moment, direct, 1e-9);
        EXPECT_LE(sd.size(), 100u);
    }
}

TEST(SupportDistribution, RejectsOutOfRangeRows) {
    const WeightVector w{{{3, 1.0}}};
    EXPECT_THROW(support_distribution(w, std::vector<double>{1.0}), std::out_of_range);
}

TEST(MakeSupportDistribution, ValidatesInvariants) {
    EXPECT_THROW(make_support_distribution({1, 1}, {0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(make_support_distribution({2, 1}, {0.5, 0.5}), std::invalid_argument);
    EXPECT_THROW(make_support_distribution({1, 2}, {0.5, 0.4}), std::invalid_argument);
    EXPECT_THROW(make_support_distribution({1, 2}, {1.5, -0.5}), std::invalid_argument);
    EXPECT_THROW(make_support_distribution({}, {}), std::invalid_argument);
}

TEST(EstimateCdf, StepFunction) {
    const auto sd = uniform_five();
    EXPECT_EQ(estimate_cdf(sd, 0.5), 0.0);
    EXPECT_NEAR(estimate_cdf(sd, 5.0), 1.0, 1e-15);
    EXPECT_NEAR(estimate_cdf(sd, 99.0), 1.0, 1e-15);
    EXPECT_NEAR(estimate_cdf(sd, 2.5), 0.4, 1e-15);
    EXPECT_NEAR(estimate_cdf(sd, 2.0), 0.4, 1e-15);  // right-continuous
    EXPECT_NEAR(estimate_cdf(sd, std::nextafter(2.0, 0.0)), 0.2, 1e-15);
}

TEST(IntervalProbability, InclusiveEnds) {
    const auto sd = uniform_five();
    EXPECT_NEAR(interval_probability(sd, 2, 4), 0.6, 1e-15);
    EXPECT_NEAR(interval_probability(sd, 3, 3), 0.2, 1e-15);
    EXPECT_NEAR(interval_probability(sd, 1, 5), 1.0, 1e-15);
    EXPECT_EQ(interval_probability(sd, 3.1, 3.9), 0.0);
    EXPECT_THROW(interval_probability(sd, 4, 2), std::invalid_argument);
}

TEST(CdfProperties, MonotoneAndConsistentWithIntervals) {
    std::mt19937_64 engine(9);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto sd = hdiforest::testing::random_support(engine, 40);
        double previous = -1.0;
        for (double y = -12.0; y <= 60.0; y += 0.37) {
            const double f = estimate_cdf(sd, y);
            EXPECT_GE(f, previous - 1e-15);
            previous = f;
            if (y < sd.support.front()) {
                EXPECT_EQ(f, 0.0);
            } else {
                EXPECT_NEAR(f, interval_probability(sd, sd.support.front() - 1.0, y), 1e-12);
            }
        }
        // Non-atom lower ends: P[l, u] = F(u) - F(l-).
        for (int k = 0; k < 20; ++k) {
            double l = u(engine);
            double h = l + std::fabs(u(engine));
            if (std::binary_search(sd.support.begin(), sd.support.end(), l)) continue;
            EXPECT_NEAR(interval_probability(sd, l, h), estimate_cdf(sd, h) - estimate_cdf(sd, l), 1e-12);
        }
    }
}
