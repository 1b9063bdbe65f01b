#include "hdiforest/interval.hpp"

#include "hdiforest/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hdiforest {

std::string_view to_string(IntervalMethod method) {
    switch (method) {
        case IntervalMethod::hdi:
            return "hdi";
        case IntervalMethod::equal_tailed:
            return "equal-tailed";
    }
    return "unknown";
}

IntervalMethod parse_interval_method(std::string_view name) {
    if (name == "hdi") return IntervalMethod::hdi;
    if (name == "equal-tailed" || name == "equal_tailed") return IntervalMethod::equal_tailed;
    throw std::invalid_argument("unknown interval method '" + std::string(name) + "'");
}

namespace detail {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1), got " + std::to_string(alpha));
    }
}

std::vector<double> prefix_mass(const SupportDistribution& sd) {
    std::vector<double> prefix(sd.size() + 1, 0.0);
    CompensatedSum acc;
    for (std::size_t k = 0; k < sd.size(); ++k) {
        acc.add(sd.weights[k]);
        prefix[k + 1] = acc.value();
    }
    return prefix;
}

namespace {

void check_support(const SupportDistribution& sd) {
    if (sd.size() == 0) throw std::invalid_argument("support distribution is empty");
    if (sd.weights.size() != sd.size()) throw std::invalid_argument("support and weights differ in length");
}

}  // namespace

PredictionInterval min_width_window(const SupportDistribution& sd, double required_mass, double alpha,
                                    SweepStats* stats) {
    check_support(sd);
    const std::size_t n = sd.size();
    const std::vector<double> prefix = prefix_mass(sd);
    const double needed = required_mass - kMassSlack;

    std::size_t advances = 0;
    bool found = false;
    std::size_t best_i = 0;
    std::size_t best_j = n - 1;
    double best_width = std::numeric_limits<double>::infinity();

    // Window is [i, end); end never moves backwards.
    std::size_t end = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) ++advances;
        if (end < i + 1) {
            end = i + 1;
            ++advances;
        }
        while (end < n && prefix[end] - prefix[i] < needed) {
            ++end;
            ++advances;
        }
        if (!(prefix[end] - prefix[i] >= needed)) break;  // later anchors see even less mass
        const double width = sd.support[end - 1] - sd.support[i];
        if (width < best_width) {
            best_width = width;
            best_i = i;
            best_j = end - 1;
            found = true;
        }
    }
    if (stats != nullptr) stats->pointer_advances = advances;

    if (!found) {
        // Only reachable when the total mass falls short of the requirement.
        best_i = 0;
        best_j = n - 1;
    }
    return {sd.support[best_i], sd.support[best_j], prefix[best_j + 1] - prefix[best_i], alpha};
}

}  // namespace detail

double quantile(const SupportDistribution& sd, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
    if (sd.size() == 0) throw std::invalid_argument("support distribution is empty");
    if (tau == 0.0) return sd.support.front();
    CompensatedSum cdf;
    for (std::size_t k = 0; k < sd.size(); ++k) {
        cdf.add(sd.weights[k]);
        if (cdf.value() >= tau - kMassSlack) return sd.support[k];
    }
    return sd.support.back();
}

PredictionInterval equal_tailed_interval(const SupportDistribution& sd, double alpha) {
    detail::check_alpha(alpha);
    const double lower = quantile(sd, alpha / 2.0);
    const double upper = quantile(sd, 1.0 - alpha / 2.0);
    return {lower, upper, interval_probability(sd, lower, upper), alpha};
}

PredictionInterval hdi(const SupportDistribution& sd, double alpha, SweepStats* stats) {
    detail::check_alpha(alpha);
    return detail::min_width_window(sd, 1.0 - alpha, alpha, stats);
}

PredictionInterval hdi_bruteforce(const SupportDistribution& sd, double alpha) {
    detail::check_alpha(alpha);
    if (sd.size() == 0) throw std::invalid_argument("support distribution is empty");
    const std::size_t n = sd.size();
    const double needed = 1.0 - alpha - kMassSlack;

    bool found = false;
    PredictionInterval best{sd.support.front(), sd.support.back(), 0.0, alpha};
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum mass;
        for (std::size_t j = i; j < n; ++j) {
            mass.add(sd.weights[j]);
            if (mass.value() < needed) continue;
            const double width = sd.support[j] - sd.support[i];
            if (!found || width < best.width()) {
                best = {sd.support[i], sd.support[j], mass.value(), alpha};
                found = true;
            }
        }
    }
    if (!found) best.estimated_coverage = compensated_sum(sd.weights);
    return best;
}

std::vector<std::optional<std::size_t>> j_opt_profile(const SupportDistribution& sd, double alpha) {
    detail::check_alpha(alpha);
    if (sd.size() == 0) throw std::invalid_argument("support distribution is empty");
    const std::size_t n = sd.size();
    const std::vector<double> prefix = detail::prefix_mass(sd);
    const double needed = 1.0 - alpha - kMassSlack;

    std::vector<std::optional<std::size_t>> profile(n);
    std::size_t end = 0;
    for (std::size_t i = 0; i < n; ++i) {
        end = std::max(end, i + 1);
        while (end < n && prefix[end] - prefix[i] < needed) ++end;
        if (prefix[end] - prefix[i] >= needed) {
            profile[i] = end - 1;
        } else {
            break;
        }
    }
    return profile;
}

ForestInterval interval_from_support(const SupportDistribution& sd, const StandardizationParams& params,
                                     double alpha, IntervalMethod method) {
    ForestInterval out;
    out.standardized = method == IntervalMethod::hdi ? hdi(sd, alpha) : equal_tailed_interval(sd, alpha);
    out.lower_raw = params.invert(out.standardized.lower);
    out.upper_raw = params.invert(out.standardized.upper);
    return out;
}

ForestInterval predict_interval(const Forest& forest, std::span<const double> x, double alpha,
                                IntervalMethod method) {
    detail::check_alpha(alpha);
    const SupportDistribution sd = support_distribution(forest_weights(forest, x), forest.targets());
    return interval_from_support(sd, forest.standardization(), alpha, method);
}

}  // namespace hdiforest
