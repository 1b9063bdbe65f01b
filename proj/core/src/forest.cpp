#include "hdiforest/forest.hpp"

#include "hdiforest/error.hpp"
#include "hdiforest/summation.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace hdiforest {

std::size_t ForestConfig::resolved_max_features(std::size_t n_features) const {
    if (max_features != 0) return max_features;
    return n_features;
}

namespace {
std::size_t route_to_node(const std::vector<TreeNode>& nodes, std::span<const double> x);
}

Tree::Tree(std::vector<TreeNode> nodes, std::size_t n_features)
    : nodes_(std::move(nodes)), n_features_(n_features) {
    if (nodes_.empty()) throw DataError("tree has no nodes");
    if (n_features_ == 0) throw DataError("tree needs at least one feature");

    // Every node must be reachable from the root exactly once.
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<std::size_t> stack{0};
    std::size_t visited = 0;
    while (!stack.empty()) {
        const std::size_t id = stack.back();
        stack.pop_back();
        if (id >= nodes_.size()) throw DataError("tree child index " + std::to_string(id) + " out of range");
        if (seen[id]) throw DataError("tree node " + std::to_string(id) + " reachable twice");
        seen[id] = 1;
        ++visited;
        if (const auto* split = std::get_if<InternalNode>(&nodes_[id])) {
            if (split->feature >= n_features_) throw DataError("split feature out of range");
            if (!std::isfinite(split->threshold)) throw DataError("split threshold is not finite");
            stack.push_back(split->right);
            stack.push_back(split->left);
        } else {
            const auto& leaf = std::get<LeafNode>(nodes_[id]);
            if (leaf.members.empty()) throw DataError("leaf " + std::to_string(leaf.leaf_id) + " has no members");
            if (leaf.leaf_id >= leaf_nodes_.size()) leaf_nodes_.resize(leaf.leaf_id + 1, nodes_.size());
            if (leaf_nodes_[leaf.leaf_id] != nodes_.size()) {
                throw DataError("duplicate leaf id " + std::to_string(leaf.leaf_id));
            }
            leaf_nodes_[leaf.leaf_id] = id;
        }
    }
    if (visited != nodes_.size()) throw DataError("tree contains unreachable nodes");
    for (std::size_t node : leaf_nodes_) {
        if (node == nodes_.size()) throw DataError("leaf ids are not contiguous");
    }
}

const LeafNode& Tree::leaf(std::size_t leaf_id) const {
    return std::get<LeafNode>(nodes_.at(leaf_nodes_.at(leaf_id)));
}

const LeafNode& Tree::route(std::span<const double> x) const {
    if (x.size() != n_features_) {
        throw std::invalid_argument("query has " + std::to_string(x.size()) + " features, tree expects " +
                                    std::to_string(n_features_));
    }
    return std::get<LeafNode>(nodes_[route_to_node(nodes_, x)]);
}

namespace {
std::size_t route_to_node(const std::vector<TreeNode>& nodes, std::span<const double> x) {
    std::size_t id = 0;
    while (const auto* split = std::get_if<InternalNode>(&nodes[id])) {
        id = x[split->feature] <= split->threshold ? split->left : split->right;
    }
    return id;
}

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
};

// Threshold strictly between two consecutive distinct values a < b such that
// a <= t < b, so the left cell keeps a.
double split_point(double a, double b) {
    const double mid = a + (b - a) / 2.0;
    return (mid >= b || mid < a) ? a : mid;
}

class TreeGrower {
public:
    TreeGrower(const Dataset& train, const TreeConfig& config, std::uint64_t node_seed)
        : train_(train), config_(config), engine_(node_seed), features_(train.n_features()) {
        std::iota(features_.begin(), features_.end(), std::size_t{0});
    }

    std::vector<TreeNode> grow(std::vector<std::size_t> bootstrap) {
        struct Pending {
            std::size_t node;
            std::vector<std::size_t> samples;
        };
        std::vector<TreeNode> nodes(1);
        std::vector<Pending> stack;
        stack.push_back({0, std::move(bootstrap)});
        std::size_t next_leaf = 0;

        while (!stack.empty()) {
            Pending item = std::move(stack.back());
            stack.pop_back();
            const SplitChoice choice = best_split(item.samples);
            if (!choice.found) {
                nodes[item.node] = LeafNode{next_leaf++, {}, 0.0};
                continue;
            }
            std::vector<std::size_t> left;
            std::vector<std::size_t> right;
            for (std::size_t r : item.samples) {
                (train_.feature(r, choice.feature) <= choice.threshold ? left : right).push_back(r);
            }
            const std::size_t left_id = nodes.size();
            const std::size_t right_id = left_id + 1;
            nodes.resize(nodes.size() + 2);
            nodes[item.node] = InternalNode{choice.feature, choice.threshold, left_id, right_id};
            stack.push_back({right_id, std::move(right)});
            stack.push_back({left_id, std::move(left)});
        }
        return nodes;
    }

private:
    SplitChoice best_split(const std::vector<std::size_t>& samples) {
        SplitChoice best;
        const std::size_t k = samples.size();
        if (k < 2 * config_.min_leaf || k < 2) return best;

        const auto y = train_.targets();
        CompensatedSum total;
        for (std::size_t r : samples) total.add(y[r]);
        const double sum = total.value();
        const double mean = sum / static_cast<double>(k);
        CompensatedSum sse;
        for (std::size_t r : samples) sse.add((y[r] - mean) * (y[r] - mean));
        if (!(sse.value() > 0.0)) return best;
        const double min_gain = 1e-12 * sse.value();

        // Partial Fisher-Yates: the first max_features slots become this
        // node's candidate columns, scanned in ascending index order.
        const std::size_t p = features_.size();
        const std::size_t draws = std::min(config_.max_features, p);
        for (std::size_t i = 0; i < draws; ++i) {
            const auto j = i + static_cast<std::size_t>(uniform_index(engine_, p - i));
            std::swap(features_[i], features_[j]);
        }
        std::vector<std::size_t> candidates(features_.begin(), features_.begin() + static_cast<std::ptrdiff_t>(draws));
        std::sort(candidates.begin(), candidates.end());

        const double parent_term = sum * sum / static_cast<double>(k);
        std::vector<std::pair<double, double>> column(k);
        for (std::size_t f : candidates) {
            for (std::size_t s = 0; s < k; ++s) column[s] = {train_.feature(samples[s], f), y[samples[s]]};
            std::sort(column.begin(), column.end());
            double left_sum = 0.0;
            for (std::size_t pos = 1; pos < k; ++pos) {
                left_sum += column[pos - 1].second;
                if (!(column[pos - 1].first < column[pos].first)) continue;
                if (pos < config_.min_leaf || k - pos < config_.min_leaf) continue;
                const double right_sum = sum - left_sum;
                const double gain = left_sum * left_sum / static_cast<double>(pos) +
                                    right_sum * right_sum / static_cast<double>(k - pos) - parent_term;
                if (gain > min_gain && (!best.found || gain > best.gain)) {
                    best = {true, f, split_point(column[pos - 1].first, column[pos].first), gain};
                }
            }
        }
        return best;
    }

    const Dataset& train_;
    TreeConfig config_;
    std::mt19937_64 engine_;
    std::vector<std::size_t> features_;
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

Tree fit_tree(const Dataset& train, const RandomizationVector& theta, const TreeConfig& config) {
    const std::size_t n = train.n_rows();
    if (n == 0) throw DataError("cannot fit a tree on empty data");
    if (config.min_leaf < 1) throw std::invalid_argument("min_leaf must be at least 1");
    if (config.max_features < 1 || config.max_features > train.n_features()) {
        throw std::invalid_argument("max_features must lie in [1, " + std::to_string(train.n_features()) + "]");
    }
    if (theta.bootstrap_indices.empty()) throw std::invalid_argument("bootstrap sample is empty");
    for (std::size_t r : theta.bootstrap_indices) {
        if (r >= n) throw std::invalid_argument("bootstrap index out of range");
    }

    TreeGrower grower(train, config, theta.node_seed);
    std::vector<TreeNode> nodes = grower.grow(theta.bootstrap_indices);
    for (std::size_t r = 0; r < n; ++r) {
        std::get<LeafNode>(nodes[route_to_node(nodes, train.row(r))]).members.push_back(r);
    }

    const auto y = train.targets();
    for (auto& node : nodes) {
        if (auto* leaf = std::get_if<LeafNode>(&node)) {
            CompensatedSum acc;
            for (std::size_t r : leaf->members) acc.add(y[r]);
            leaf->mean = acc.value() / static_cast<double>(leaf->members.size());
        }
    }
    return Tree(std::move(nodes), train.n_features());
}

RandomizationVector make_randomization(std::size_t n_rows, std::uint64_t seed, std::size_t tree_index) {
    std::mt19937_64 engine(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(tree_index))));
    RandomizationVector theta;
    theta.bootstrap_indices.resize(n_rows);
    for (auto& idx : theta.bootstrap_indices) idx = static_cast<std::size_t>(uniform_index(engine, n_rows));
    theta.node_seed = engine();
    return theta;
}

Forest::Forest(std::vector<Tree> trees, std::vector<double> targets, StandardizationParams standardization,
               std::size_t n_features, ForestConfig config, std::uint64_t seed)
    : trees_(std::move(trees)),
      targets_(std::move(targets)),
      standardization_(standardization),
      n_features_(n_features),
      config_(config),
      seed_(seed) {
    if (trees_.empty()) throw DataError("forest needs at least one tree");
    if (targets_.empty()) throw DataError("forest has no training targets");
    if (!(standardization_.target_std > 0.0) || !std::isfinite(standardization_.target_std) ||
        !std::isfinite(standardization_.target_mean)) {
        throw DataError("invalid standardization parameters");
    }
    for (double y : targets_) {
        if (!std::isfinite(y)) throw DataError("forest targets contain non-finite values");
    }
    const std::size_t n = targets_.size();
    std::vector<std::size_t> owner(n);
    for (std::size_t t = 0; t < trees_.size(); ++t) {
        const Tree& tree = trees_[t];
        if (tree.n_features() != n_features_) throw DataError("tree feature width disagrees with forest");
        std::fill(owner.begin(), owner.end(), tree.leaf_count());
        for (std::size_t leaf_id = 0; leaf_id < tree.leaf_count(); ++leaf_id) {
            for (std::size_t r : tree.leaf(leaf_id).members) {
                if (r >= n) throw DataError("tree " + std::to_string(t) + " references training row out of range");
                if (owner[r] != tree.leaf_count()) {
                    throw DataError("tree " + std::to_string(t) + " places row " + std::to_string(r) + " in two leaves");
                }
                owner[r] = leaf_id;
            }
        }
        if (std::find(owner.begin(), owner.end(), tree.leaf_count()) != owner.end()) {
            throw DataError("tree " + std::to_string(t) + " leaves some training rows unassigned");
        }
    }
}

void Forest::check_query(std::span<const double> x) const {
    if (x.size() != n_features_) {
        throw std::invalid_argument("query has " + std::to_string(x.size()) + " features, model expects " +
                                    std::to_string(n_features_));
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw std::invalid_argument("query contains a non-finite feature value");
    }
}

Forest fit_forest(const Dataset& train, const ForestConfig& config, std::uint64_t seed) {
    if (config.n_trees < 1) throw std::invalid_argument("forest needs at least one tree");
    auto [standardized, params] = standardize_targets(train);
    const TreeConfig tree_config{config.min_leaf, config.resolved_max_features(train.n_features())};

    std::vector<Tree> trees(config.n_trees);
    detail::parallel_for(config.n_trees, [&](std::size_t t) {
        trees[t] = fit_tree(standardized, make_randomization(standardized.n_rows(), seed, t), tree_config);
    });
    const auto y = standardized.targets();
    return Forest(std::move(trees), std::vector<double>(y.begin(), y.end()), params, train.n_features(), config,
                  seed);
}

std::size_t leaf_of(const Tree& tree, std::span<const double> x) { return tree.route(x).leaf_id; }

double predict_mean_standardized(const Forest& forest, std::span<const double> x) {
    forest.check_query(x);
    CompensatedSum acc;
    for (const Tree& tree : forest.trees()) acc.add(tree.route(x).mean);
    return acc.value() / static_cast<double>(forest.trees().size());
}

double predict_mean(const Forest& forest, std::span<const double> x) {
    return forest.standardization().invert(predict_mean_standardized(forest, x));
}

}  // namespace hdiforest
