#pragma once

#include "hdiforest/interval.hpp"
#include "hdiforest/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace hdiforest::cli {

/// Interval routine under test; defaults to hdi.
using IntervalSolver = std::function<PredictionInterval(const SupportDistribution&, double)>;

struct OracleCase {
    SupportDistribution sd;
    double alpha = 0.0;
};

/// Random instance: support size uniform in [1, max_support]; support either
/// an integer grid (many equal-width candidates) or sorted distinct reals;
/// weights from normalized exponential draws, uniform weights, or a sparse
/// mix with exact zeros; alpha uniform in [0, 0.99].
OracleCase random_oracle_case(std::uint64_t seed, std::size_t case_index, std::size_t max_support);

struct OracleCheckResult {
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::size_t hdi_mismatches = 0;
    std::size_t monotonicity_violations = 0;
    std::optional<std::string> first_failure;

    [[nodiscard]] bool ok() const { return passed == cases; }
};

/// Checks solver against hdi_bruteforce (identical endpoints) and that
/// j_opt_profile is nondecreasing on every case.
OracleCheckResult run_oracle_check(std::size_t cases, std::size_t max_support, std::uint64_t seed,
                                   const IntervalSolver& solver = {});

/// Two-pointer sweep with the feasibility threshold inverted (mass >=
/// alpha rather than 1 - alpha). Used to confirm the checker catches it.
PredictionInterval mutant_alpha_threshold(const SupportDistribution& sd, double alpha);

}  // namespace hdiforest::cli
