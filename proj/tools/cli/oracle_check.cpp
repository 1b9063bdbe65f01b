#include "cli/oracle_check.hpp"

#include "hdiforest/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hdiforest::cli {

namespace {

double unit(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

OracleCase random_oracle_case(std::uint64_t seed, std::size_t case_index, std::size_t max_support) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(case_index), static_cast<std::uint32_t>(case_index >> 32)};
    std::mt19937_64 engine(seq);
    const std::size_t n = 1 + static_cast<std::size_t>(uniform_index(engine, std::max<std::size_t>(1, max_support)));

    std::vector<double> support;
    if (engine() % 2 == 0) {
        const auto offset = static_cast<double>(uniform_index(engine, 100)) - 50.0;
        for (std::size_t k = 0; k < n; ++k) support.push_back(offset + static_cast<double>(k));
    } else {
        while (support.size() < n) {
            support.clear();
            for (std::size_t k = 0; k < n; ++k) support.push_back(unit(engine) * 20.0 - 10.0);
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()), support.end());
        }
    }

    std::vector<double> weights(n);
    switch (engine() % 3) {
        case 0:
            std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(n));
            break;
        case 1:
            for (auto& w : weights) w = -std::log1p(-unit(engine));
            break;
        default:
            for (auto& w : weights) w = (engine() % 3 == 0) ? 0.0 : -std::log1p(-unit(engine));
            if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) weights[0] = 1.0;
            break;
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (auto& w : weights) w /= total;

    OracleCase out;
    out.sd.support = std::move(support);
    out.sd.weights = std::move(weights);
    out.alpha = 0.99 * unit(engine);
    return out;
}

OracleCheckResult run_oracle_check(std::size_t cases, std::size_t max_support, std::uint64_t seed,
                                   const IntervalSolver& solver) {
    const IntervalSolver fast = solver ? solver : IntervalSolver([](const SupportDistribution& sd, double alpha) {
        return hdi(sd, alpha);
    });
    OracleCheckResult result;
    result.cases = cases;
    for (std::size_t c = 0; c < cases; ++c) {
        const OracleCase oc = random_oracle_case(seed, c, max_support);
        const PredictionInterval got = fast(oc.sd, oc.alpha);
        const PredictionInterval want = hdi_bruteforce(oc.sd, oc.alpha);
        const bool same = got.lower == want.lower && got.upper == want.upper;

        bool monotone = true;
        std::optional<std::size_t> previous;
        for (const auto& j : j_opt_profile(oc.sd, oc.alpha)) {
            if (!j) continue;
            if (previous && *j < *previous) monotone = false;
            previous = j;
        }

        if (!same) ++result.hdi_mismatches;
        if (!monotone) ++result.monotonicity_violations;
        if (same && monotone) {
            ++result.passed;
        } else if (!result.first_failure) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "case " << c << " (support size " << oc.sd.size() << ", alpha " << oc.alpha << "): ";
            if (!same) {
                msg << "solver gave [" << got.lower << ", " << got.upper << "], brute force gave [" << want.lower
                    << ", " << want.upper << "]";
            }
            if (!monotone) msg << (same ? "" : "; ") << "j_opt profile decreases";
            result.first_failure = msg.str();
        }
    }
    return result;
}

PredictionInterval mutant_alpha_threshold(const SupportDistribution& sd, double alpha) {
    return detail::min_width_window(sd, alpha, alpha, nullptr);
}

}  // namespace hdiforest::cli
