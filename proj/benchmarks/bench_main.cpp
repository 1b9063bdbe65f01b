#include "hdiforest/forest.hpp"
#include "hdiforest/interval.hpp"
#include "hdiforest/synthetic.hpp"
#include "hdiforest/weights.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

using namespace hdiforest;

namespace {

SupportDistribution random_support(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> support(n), weights(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        support[i] = static_cast<double>(i) + e(engine);
        weights[i] = e(engine);
        total += weights[i];
    }
    std::sort(support.begin(), support.end());
    for (auto& w : weights) w /= total;
    return make_support_distribution(std::move(support), std::move(weights));
}

void BM_Hdi(benchmark::State& state) {
    const auto sd = random_support(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(hdi(sd, 0.1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hdi)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oN);

void BM_HdiBruteforce(benchmark::State& state) {
    const auto sd = random_support(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(hdi_bruteforce(sd, 0.1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HdiBruteforce)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNSquared);

void BM_EqualTailed(benchmark::State& state) {
    const auto sd = random_support(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(equal_tailed_interval(sd, 0.1));
}
BENCHMARK(BM_EqualTailed)->RangeMultiplier(4)->Range(16, 16384);

const Dataset& synthetic_train() {
    static const Dataset data = make_synthetic({2000, NoiseKind::gaussian, 0.5, 2.0, 1.0, 1});
    return data;
}

void BM_FitForest(benchmark::State& state) {
    const ForestConfig config{static_cast<std::size_t>(state.range(0)), 5, 0};
    for (auto _ : state) benchmark::DoNotOptimize(fit_forest(synthetic_train(), config, 7));
}
BENCHMARK(BM_FitForest)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ForestWeightsAndHdi(benchmark::State& state) {
    const Forest forest = fit_forest(synthetic_train(), {200, static_cast<std::size_t>(state.range(0)), 0}, 7);
    const std::vector<double> x{0.3, -0.7};
    for (auto _ : state) {
        const auto sd = support_distribution(forest_weights(forest, x), forest.targets());
        benchmark::DoNotOptimize(hdi(sd, 0.1));
    }
}
BENCHMARK(BM_ForestWeightsAndHdi)->Arg(5)->Arg(40)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
