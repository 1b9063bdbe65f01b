#pragma once

#include "hdiforest/forest.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hdiforest {

/// Sparse per-query weights over training rows, sorted by row index with no
/// duplicate indices. Weights are nonnegative and sum to one.
struct WeightVector {
    std::vector<std::pair<std::size_t, double>> entries;

    [[nodiscard]] double total() const;
    /// Weight of row `index`, 0 if absent.
    [[nodiscard]] double at(std::size_t index) const;
};

/// Query-specific discrete distribution over the distinct responses that carry
/// positive weight: support strictly increasing, weights aligned, mass one.
struct SupportDistribution {
    std::vector<double> support;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const { return support.size(); }
};

/// Builds a SupportDistribution from explicit atoms, validating strict
/// ordering, nonnegativity and unit mass (within 1e-9).
SupportDistribution make_support_distribution(std::vector<double> support, std::vector<double> weights);

/// 1/|leaf| for every member of the leaf containing x.
WeightVector tree_weights(const Tree& tree, std::span<const double> x);

/// Mean of the per-tree weight vectors.
WeightVector forest_weights(const Forest& forest, std::span<const double> x);

/// Collapses weights onto sorted distinct response values. Responses are
/// merged only when they compare exactly equal.
SupportDistribution support_distribution(const WeightVector& w, std::span<const double> targets);

/// Weighted empirical CDF: total weight at atoms <= y.
double estimate_cdf(const SupportDistribution& sd, double y);

/// Weight on atoms in [lower, upper], both ends inclusive.
double interval_probability(const SupportDistribution& sd, double lower, double upper);

}  // namespace hdiforest
