#pragma once

#include "hdiforest/dataset.hpp"
#include "hdiforest/forest.hpp"
#include "hdiforest/interval.hpp"
#include "hdiforest/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hdiforest {

struct PIQualityReport {
    double alpha = 0.0;
    IntervalMethod method = IntervalMethod::hdi;
    double picp = 0.0;
    double mpiw_standardized = 0.0;
    double mpiw_raw = 0.0;
    std::size_t n_test = 0;
};

/// Fraction of responses inside their interval, endpoints inclusive.
double picp(std::span<const PredictionInterval> intervals, std::span<const double> y);

/// Mean of upper - lower.
double mpiw(std::span<const PredictionInterval> intervals);

/// Support distributions for every test row. They do not depend on alpha, so
/// a sweep builds them once.
std::vector<SupportDistribution> test_supports(const Forest& forest, const Dataset& test);

/// Per-row intervals (standardized units) over precomputed supports.
std::vector<PredictionInterval> intervals_for(std::span<const SupportDistribution> supports, double alpha,
                                              IntervalMethod method);

/// Scores intervals against raw test responses; responses are standardized
/// with the forest's training parameters before comparison.
PIQualityReport evaluate(const Forest& forest, const Dataset& test, double alpha, IntervalMethod method);

/// One report per (alpha, method), alphas outer, methods inner.
std::vector<PIQualityReport> sweep(const Forest& forest, const Dataset& test, std::span<const double> alphas,
                                   std::span<const IntervalMethod> methods);

/// Split/fit/sweep `repeats` times (split and forest seeds seed + r) and
/// average picp and mpiw per (alpha, method). n_test is the per-split test size.
std::vector<PIQualityReport> repeated_sweep(const Dataset& data, const ForestConfig& config, double test_fraction,
                                            std::uint64_t seed, std::size_t repeats, std::span<const double> alphas,
                                            std::span<const IntervalMethod> methods);

}  // namespace hdiforest
