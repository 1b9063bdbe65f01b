#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hdiforest {

/// Row-major feature matrix plus response vector.
///
/// Invariants (enforced by the constructor): n >= 2 rows, p >= 1 columns,
/// every value finite, targets.size() == n.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<double> features, std::size_t n_features, std::vector<double> targets,
            std::vector<std::string> column_names = {});

    [[nodiscard]] std::size_t n_rows() const { return targets_.size(); }
    [[nodiscard]] std::size_t n_features() const { return n_features_; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * n_features_, n_features_};
    }
    [[nodiscard]] double feature(std::size_t i, std::size_t j) const {
        return features_[i * n_features_ + j];
    }
    [[nodiscard]] std::span<const double> features() const { return features_; }
    [[nodiscard]] std::span<const double> targets() const { return targets_; }
    [[nodiscard]] const std::vector<std::string>& column_names() const { return column_names_; }

    /// Rows in the given order (duplicates allowed); used by split.
    [[nodiscard]] Dataset subset(std::span<const std::size_t> rows) const;
    [[nodiscard]] Dataset with_targets(std::vector<double> targets) const;

private:
    std::vector<double> features_;
    std::size_t n_features_ = 0;
    std::vector<double> targets_;
    std::vector<std::string> column_names_;
};

/// Target column selector: a header name or a zero-based column index.
using TargetColumn = std::variant<std::string, std::size_t>;

/// Reads a comma-separated file with a header row. Every cell must parse as a
/// finite number (C locale). Throws DataError naming the offending row/column.
Dataset load_csv(const std::filesystem::path& path, const TargetColumn& target);

/// Same as load_csv but every column is a feature (no target). Used for
/// prediction inputs; column_names() holds all headers.
Dataset load_features_csv(const std::filesystem::path& path, std::size_t expected_features);

struct TrainTestSplit {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

/// Seeded shuffle-and-cut. The test side receives floor(n * test_fraction)
/// rows. The permutation is a Fisher-Yates shuffle driven by std::mt19937_64
/// with bounded draws by rejection sampling, so the result is identical on
/// every conforming standard library.
TrainTestSplit split(const Dataset& data, double test_fraction, std::uint64_t seed);

/// Response standardization with population (1/n) standard deviation.
struct StandardizationParams {
    double target_mean = 0.0;
    double target_std = 1.0;

    [[nodiscard]] double apply(double y) const { return (y - target_mean) / target_std; }
    [[nodiscard]] double invert(double z) const { return z * target_std + target_mean; }
};

StandardizationParams fit_standardization(std::span<const double> targets);

/// Returns the training set with standardized targets and the fitted params.
/// Throws DataError for zero-variance targets.
std::pair<Dataset, StandardizationParams> standardize_targets(const Dataset& train);

/// Applies previously fitted params (e.g. training params to a test set).
Dataset apply_standardization(const Dataset& data, const StandardizationParams& params);

/// Unbiased integer in [0, bound) from a 64-bit engine output stream.
/// Exposed for the forest's bootstrap and feature draws.
template <class Engine>
std::uint64_t uniform_index(Engine& engine, std::uint64_t bound) {
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound);
    for (;;) {
        const std::uint64_t r = engine();
        if (r <= limit) return r % bound;
    }
}

}  // namespace hdiforest
