#include "hdiforest/weights.hpp"

#include "hdiforest/summation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hdiforest {

double WeightVector::total() const {
    CompensatedSum acc;
    for (const auto& [index, weight] : entries) acc.add(weight);
    return acc.value();
}

double WeightVector::at(std::size_t index) const {
    const auto it = std::lower_bound(entries.begin(), entries.end(), index,
                                     [](const auto& entry, std::size_t i) { return entry.first < i; });
    return (it != entries.end() && it->first == index) ? it->second : 0.0;
}

SupportDistribution make_support_distribution(std::vector<double> support, std::vector<double> weights) {
    if (support.empty()) throw std::invalid_argument("support distribution needs at least one atom");
    if (support.size() != weights.size()) throw std::invalid_argument("support and weights differ in length");
    CompensatedSum mass;
    for (std::size_t k = 0; k < support.size(); ++k) {
        if (!std::isfinite(support[k])) throw std::invalid_argument("support atom is not finite");
        if (k > 0 && !(support[k - 1] < support[k])) throw std::invalid_argument("support must be strictly increasing");
        if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) {
            throw std::invalid_argument("support weights must be finite and nonnegative");
        }
        mass.add(weights[k]);
    }
    if (std::fabs(mass.value() - 1.0) > 1e-9) {
        throw std::invalid_argument("support weights sum to " + std::to_string(mass.value()) + ", expected 1");
    }
    return {std::move(support), std::move(weights)};
}

WeightVector tree_weights(const Tree& tree, std::span<const double> x) {
    const LeafNode& leaf = tree.route(x);
    const double share = 1.0 / static_cast<double>(leaf.members.size());
    WeightVector w;
    w.entries.reserve(leaf.members.size());
    for (std::size_t r : leaf.members) w.entries.emplace_back(r, share);
    std::sort(w.entries.begin(), w.entries.end());
    return w;
}

WeightVector forest_weights(const Forest& forest, std::span<const double> x) {
    forest.check_query(x);

    // Gather (row, 1/|leaf|) from every tree, group by row, then reduce each
    // group with compensated summation.
    std::vector<std::pair<std::size_t, double>> contributions;
    for (const Tree& tree : forest.trees()) {
        const LeafNode& leaf = tree.route(x);
        const double share = 1.0 / static_cast<double>(leaf.members.size());
        for (std::size_t r : leaf.members) contributions.emplace_back(r, share);
    }
    std::sort(contributions.begin(), contributions.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    const double inv_trees = 1.0 / static_cast<double>(forest.trees().size());
    WeightVector w;
    for (std::size_t i = 0; i < contributions.size();) {
        const std::size_t row = contributions[i].first;
        CompensatedSum acc;
        for (; i < contributions.size() && contributions[i].first == row; ++i) acc.add(contributions[i].second);
        w.entries.emplace_back(row, acc.value() * inv_trees);
    }
    return w;
}

SupportDistribution support_distribution(const WeightVector& w, std::span<const double> targets) {
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(w.entries.size());
    for (const auto& [row, weight] : w.entries) {
        if (row >= targets.size()) throw std::out_of_range("weight index " + std::to_string(row) + " has no target");
        if (weight > 0.0) atoms.emplace_back(targets[row], weight);
    }
    if (atoms.empty()) throw std::invalid_argument("weight vector carries no positive mass");
    std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    SupportDistribution sd;
    for (std::size_t i = 0; i < atoms.size();) {
        const double value = atoms[i].first;
        CompensatedSum acc;
        for (; i < atoms.size() && atoms[i].first == value; ++i) acc.add(atoms[i].second);
        sd.support.push_back(value);
        sd.weights.push_back(acc.value());
    }
    return sd;
}

double estimate_cdf(const SupportDistribution& sd, double y) {
    const auto end = std::upper_bound(sd.support.begin(), sd.support.end(), y);
    const auto count = static_cast<std::size_t>(end - sd.support.begin());
    return compensated_sum(std::span<const double>(sd.weights).first(count));
}

double interval_probability(const SupportDistribution& sd, double lower, double upper) {
    if (lower > upper) throw std::invalid_argument("interval lower end exceeds upper end");
    const auto first = std::lower_bound(sd.support.begin(), sd.support.end(), lower);
    const auto last = std::upper_bound(sd.support.begin(), sd.support.end(), upper);
    CompensatedSum acc;
    for (auto it = first; it < last; ++it) acc.add(sd.weights[static_cast<std::size_t>(it - sd.support.begin())]);
    return acc.value();
}

}  // namespace hdiforest
