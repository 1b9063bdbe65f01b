#pragma once

#include "hdiforest/forest.hpp"
#include "hdiforest/weights.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hdiforest {

/// Absolute slack applied to every accumulated-mass comparison.
inline constexpr double kMassSlack = 1e-12;

struct PredictionInterval {
    double lower = 0.0;
    double upper = 0.0;
    double estimated_coverage = 0.0;
    double alpha = 0.0;

    [[nodiscard]] double width() const { return upper - lower; }
};

enum class IntervalMethod { hdi, equal_tailed };

std::string_view to_string(IntervalMethod method);
/// Accepts "hdi", "equal-tailed" and "equal_tailed".
IntervalMethod parse_interval_method(std::string_view name);

/// Smallest atom whose CDF reaches tau (within kMassSlack); tau = 0 gives the
/// smallest atom.
double quantile(const SupportDistribution& sd, double tau);

/// [quantile(alpha / 2), quantile(1 - alpha / 2)].
PredictionInterval equal_tailed_interval(const SupportDistribution& sd, double alpha);

/// Instrumentation for the linear sweep.
struct SweepStats {
    std::size_t pointer_advances = 0;
};

/// Narrowest [support[i], support[j]] holding at least 1 - alpha of the mass.
/// Linear two-pointer sweep; equal widths resolve to the smallest i.
PredictionInterval hdi(const SupportDistribution& sd, double alpha, SweepStats* stats = nullptr);

/// Same contract as hdi, by enumerating every pair i <= j. Quadratic; meant as
/// a reference.
PredictionInterval hdi_bruteforce(const SupportDistribution& sd, double alpha);

/// For every anchor i (0-based), the smallest j with sum(w[i..j]) >= 1 - alpha,
/// or nullopt when the suffix starting at i is too light.
std::vector<std::optional<std::size_t>> j_opt_profile(const SupportDistribution& sd, double alpha);

/// Interval from a fitted forest, in both standardized and raw response units.
struct ForestInterval {
    PredictionInterval standardized;
    double lower_raw = 0.0;
    double upper_raw = 0.0;
};

ForestInterval interval_from_support(const SupportDistribution& sd, const StandardizationParams& params,
                                     double alpha, IntervalMethod method);

ForestInterval predict_interval(const Forest& forest, std::span<const double> x, double alpha,
                                IntervalMethod method);

namespace detail {

/// The sweep behind hdi with the mass requirement passed explicitly
/// (hdi uses 1 - alpha). Lets tests run deliberately wrong thresholds through
/// the same code path.
PredictionInterval min_width_window(const SupportDistribution& sd, double required_mass, double alpha,
                                    SweepStats* stats);

/// Running prefix masses: result[k] = w[0] + ... + w[k-1], compensated.
std::vector<double> prefix_mass(const SupportDistribution& sd);

void check_alpha(double alpha);

}  // namespace detail

}  // namespace hdiforest
