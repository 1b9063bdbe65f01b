#pragma once

#include "hdiforest/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace hdiforest {

/// Per-tree randomness: the bootstrap multiset and the seed for per-node
/// feature subsampling.
struct RandomizationVector {
    std::vector<std::size_t> bootstrap_indices;
    std::uint64_t node_seed = 0;
};

struct TreeConfig {
    std::size_t min_leaf = 5;
    std::size_t max_features = 1;
};

struct ForestConfig {
    std::size_t n_trees = 500;
    std::size_t min_leaf = 5;
    /// 0 selects every column (p).
    std::size_t max_features = 0;

    [[nodiscard]] std::size_t resolved_max_features(std::size_t n_features) const;
};

struct InternalNode {
    std::size_t feature = 0;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
};

struct LeafNode {
    std::size_t leaf_id = 0;
    /// Original training rows routed to this cell (not the bootstrap draw).
    std::vector<std::size_t> members;
    double mean = 0.0;
};

using TreeNode = std::variant<InternalNode, LeafNode>;

/// Axis-parallel partition tree stored as a flat node array; node 0 is the
/// root. Routing sends x left iff x[feature] <= threshold.
class Tree {
public:
    Tree() = default;
    /// Validates structure: single root, in-range acyclic children, split
    /// features below n_features, leaf ids 0..L-1 each used once, nonempty
    /// member lists.
    Tree(std::vector<TreeNode> nodes, std::size_t n_features);

    [[nodiscard]] const std::vector<TreeNode>& nodes() const { return nodes_; }
    [[nodiscard]] std::size_t n_features() const { return n_features_; }
    [[nodiscard]] std::size_t leaf_count() const { return leaf_nodes_.size(); }
    [[nodiscard]] const LeafNode& leaf(std::size_t leaf_id) const;

    /// Routes x to its leaf; throws std::invalid_argument if x.size() differs
    /// from n_features().
    [[nodiscard]] const LeafNode& route(std::span<const double> x) const;

private:
    std::vector<TreeNode> nodes_;
    std::size_t n_features_ = 0;
    std::vector<std::size_t> leaf_nodes_;  // leaf_id -> node index
};

/// Grows one variance-reduction tree on the bootstrap sample of `train`, then
/// fills leaf memberships by routing every original training row.
Tree fit_tree(const Dataset& train, const RandomizationVector& theta, const TreeConfig& config);

/// Derives tree `tree_index`'s randomization from the forest seed.
RandomizationVector make_randomization(std::size_t n_rows, std::uint64_t seed, std::size_t tree_index);

class Forest {
public:
    Forest(std::vector<Tree> trees, std::vector<double> targets, StandardizationParams standardization,
           std::size_t n_features, ForestConfig config = {}, std::uint64_t seed = 0);

    [[nodiscard]] const std::vector<Tree>& trees() const { return trees_; }
    /// Standardized training responses indexed by training row.
    [[nodiscard]] std::span<const double> targets() const { return targets_; }
    [[nodiscard]] const StandardizationParams& standardization() const { return standardization_; }
    [[nodiscard]] std::size_t n_features() const { return n_features_; }
    [[nodiscard]] std::size_t n_train() const { return targets_.size(); }
    [[nodiscard]] const ForestConfig& config() const { return config_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    /// Throws std::invalid_argument on wrong length or non-finite entries.
    void check_query(std::span<const double> x) const;

private:
    std::vector<Tree> trees_;
    std::vector<double> targets_;
    StandardizationParams standardization_;
    std::size_t n_features_ = 0;
    ForestConfig config_;
    std::uint64_t seed_ = 0;
};

/// Standardizes the training responses, then fits `config.n_trees` trees.
/// The result depends only on (train, config, seed), never on thread
/// scheduling.
Forest fit_forest(const Dataset& train, const ForestConfig& config, std::uint64_t seed);

std::size_t leaf_of(const Tree& tree, std::span<const double> x);

/// Mean prediction in standardized units: average of per-tree leaf means.
double predict_mean_standardized(const Forest& forest, std::span<const double> x);

/// Mean prediction in raw response units.
double predict_mean(const Forest& forest, std::span<const double> x);

}  // namespace hdiforest
