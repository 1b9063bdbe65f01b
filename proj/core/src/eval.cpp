#include "hdiforest/eval.hpp"

#include "hdiforest/summation.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdiforest {

double picp(std::span<const PredictionInterval> intervals, std::span<const double> y) {
    if (intervals.empty()) throw std::invalid_argument("picp needs at least one interval");
    if (intervals.size() != y.size()) throw std::invalid_argument("picp: intervals and responses differ in length");
    std::size_t covered = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (intervals[i].lower <= y[i] && y[i] <= intervals[i].upper) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(y.size());
}

double mpiw(std::span<const PredictionInterval> intervals) {
    if (intervals.empty()) throw std::invalid_argument("mpiw needs at least one interval");
    // Sorted so the mean does not depend on row order.
    std::vector<double> widths;
    widths.reserve(intervals.size());
    for (const auto& pi : intervals) widths.push_back(pi.width());
    std::sort(widths.begin(), widths.end());
    return compensated_sum(widths) / static_cast<double>(widths.size());
}

std::vector<SupportDistribution> test_supports(const Forest& forest, const Dataset& test) {
    std::vector<SupportDistribution> supports(test.n_rows());
    detail::parallel_for(test.n_rows(), [&](std::size_t i) {
        supports[i] = support_distribution(forest_weights(forest, test.row(i)), forest.targets());
    });
    return supports;
}

std::vector<PredictionInterval> intervals_for(std::span<const SupportDistribution> supports, double alpha,
                                              IntervalMethod method) {
    detail::check_alpha(alpha);
    std::vector<PredictionInterval> out;
    out.reserve(supports.size());
    for (const auto& sd : supports) {
        out.push_back(method == IntervalMethod::hdi ? hdi(sd, alpha) : equal_tailed_interval(sd, alpha));
    }
    return out;
}

namespace {

PIQualityReport score(std::span<const PredictionInterval> intervals, std::span<const double> y_standardized,
                      const StandardizationParams& params, double alpha, IntervalMethod method) {
    PIQualityReport report;
    report.alpha = alpha;
    report.method = method;
    report.picp = picp(intervals, y_standardized);
    report.mpiw_standardized = mpiw(intervals);
    report.mpiw_raw = report.mpiw_standardized * params.target_std;
    report.n_test = intervals.size();
    return report;
}

std::vector<double> standardized_responses(const Forest& forest, const Dataset& test) {
    std::vector<double> z;
    z.reserve(test.n_rows());
    for (double y : test.targets()) z.push_back(forest.standardization().apply(y));
    return z;
}

}  // namespace

PIQualityReport evaluate(const Forest& forest, const Dataset& test, double alpha, IntervalMethod method) {
    detail::check_alpha(alpha);
    const auto supports = test_supports(forest, test);
    const auto intervals = intervals_for(supports, alpha, method);
    return score(intervals, standardized_responses(forest, test), forest.standardization(), alpha, method);
}

std::vector<PIQualityReport> sweep(const Forest& forest, const Dataset& test, std::span<const double> alphas,
                                   std::span<const IntervalMethod> methods) {
    for (double a : alphas) detail::check_alpha(a);
    std::vector<PIQualityReport> reports;
    if (alphas.empty() || methods.empty()) return reports;

    const auto supports = test_supports(forest, test);
    const auto y = standardized_responses(forest, test);
    for (double alpha : alphas) {
        for (IntervalMethod method : methods) {
            const auto intervals = intervals_for(supports, alpha, method);
            reports.push_back(score(intervals, y, forest.standardization(), alpha, method));
        }
    }
    return reports;
}

std::vector<PIQualityReport> repeated_sweep(const Dataset& data, const ForestConfig& config, double test_fraction,
                                            std::uint64_t seed, std::size_t repeats, std::span<const double> alphas,
                                            std::span<const IntervalMethod> methods) {
    if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    std::vector<PIQualityReport> mean;
    std::vector<CompensatedSum> picp_sum;
    std::vector<CompensatedSum> mpiw_std_sum;
    std::vector<CompensatedSum> mpiw_raw_sum;
    for (std::size_t r = 0; r < repeats; ++r) {
        const auto parts = split(data, test_fraction, seed + r);
        const Forest forest = fit_forest(parts.train, config, seed + r);
        const auto reports = sweep(forest, parts.test, alphas, methods);
        if (r == 0) {
            mean = reports;
            picp_sum.resize(reports.size());
            mpiw_std_sum.resize(reports.size());
            mpiw_raw_sum.resize(reports.size());
        }
        for (std::size_t k = 0; k < reports.size(); ++k) {
            picp_sum[k].add(reports[k].picp);
            mpiw_std_sum[k].add(reports[k].mpiw_standardized);
            mpiw_raw_sum[k].add(reports[k].mpiw_raw);
        }
    }
    const double count = static_cast<double>(repeats);
    for (std::size_t k = 0; k < mean.size(); ++k) {
        mean[k].picp = picp_sum[k].value() / count;
        mean[k].mpiw_standardized = mpiw_std_sum[k].value() / count;
        mean[k].mpiw_raw = mpiw_raw_sum[k].value() / count;
    }
    return mean;
}

}  // namespace hdiforest
