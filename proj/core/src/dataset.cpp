#include "hdiforest/dataset.hpp"

#include "hdiforest/error.hpp"
#include "hdiforest/summation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hdiforest {

Dataset::Dataset(std::vector<double> features, std::size_t n_features, std::vector<double> targets,
                 std::vector<std::string> column_names)
    : features_(std::move(features)),
      n_features_(n_features),
      targets_(std::move(targets)),
      column_names_(std::move(column_names)) {
    if (n_features_ == 0) throw DataError("dataset needs at least one feature column");
    if (targets_.empty()) throw DataError("dataset has no rows");
    if (features_.size() != targets_.size() * n_features_) {
        throw DataError("feature matrix has " + std::to_string(features_.size()) + " values, expected " +
                        std::to_string(targets_.size()) + " x " + std::to_string(n_features_));
    }
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(features_.begin(), features_.end(), finite) ||
        !std::all_of(targets_.begin(), targets_.end(), finite)) {
        throw DataError("dataset contains non-finite values");
    }
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
    std::vector<double> feats;
    std::vector<double> ys;
    feats.reserve(rows.size() * n_features_);
    ys.reserve(rows.size());
    for (std::size_t r : rows) {
        if (r >= n_rows()) throw std::out_of_range("row index out of range");
        const auto x = row(r);
        feats.insert(feats.end(), x.begin(), x.end());
        ys.push_back(targets_[r]);
    }
    return Dataset(std::move(feats), n_features_, std::move(ys), column_names_);
}

Dataset Dataset::with_targets(std::vector<double> targets) const {
    return Dataset(features_, n_features_, std::move(targets), column_names_);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

struct RawTable {
    std::vector<std::string> header;
    std::vector<double> values;  // row-major, header.size() columns
    std::size_t rows = 0;
};

RawTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");

    RawTable table;
    std::string line;
    if (!std::getline(in, line)) throw DataError("'" + path.string() + "' is empty (header row required)");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // UTF-8 byte order mark
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    for (auto& name : split_line(line)) table.header.push_back(trim(name));
    const std::size_t cols = table.header.size();

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != cols) {
            throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                            " cells, found " + std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            const std::string cell = trim(cells[c]);
            double value = 0.0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            if (!cell.empty() && *first == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (cell.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
                throw DataError("row " + std::to_string(table.rows + 1) + " (line " + std::to_string(line_no) +
                                "), column '" + table.header[c] + "': " +
                                (cell.empty() ? std::string("missing value") : "not a finite number: '" + cell + "'"));
            }
            table.values.push_back(value);
        }
        ++table.rows;
    }
    return table;
}

std::size_t resolve_target(const RawTable& table, const TargetColumn& target) {
    if (const auto* index = std::get_if<std::size_t>(&target)) {
        if (*index >= table.header.size()) {
            throw DataError("target column index " + std::to_string(*index) + " out of range (" +
                            std::to_string(table.header.size()) + " columns)");
        }
        return *index;
    }
    const auto& name = std::get<std::string>(target);
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) throw DataError("unknown target column '" + name + "'");
    return static_cast<std::size_t>(it - table.header.begin());
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const TargetColumn& target) {
    const RawTable table = read_table(path);
    const std::size_t target_col = resolve_target(table, target);
    const std::size_t cols = table.header.size();
    if (cols < 2) throw DataError("need at least one feature column besides the target");
    if (table.rows < 2) {
        throw DataError("'" + path.string() + "' has " + std::to_string(table.rows) + " data rows, need at least 2");
    }

    std::vector<double> features;
    std::vector<double> targets;
    features.reserve(table.rows * (cols - 1));
    targets.reserve(table.rows);
    for (std::size_t r = 0; r < table.rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = table.values[r * cols + c];
            if (c == target_col) {
                targets.push_back(v);
            } else {
                features.push_back(v);
            }
        }
    }
    std::vector<std::string> names;
    for (std::size_t c = 0; c < cols; ++c) {
        if (c != target_col) names.push_back(table.header[c]);
    }
    return Dataset(std::move(features), cols - 1, std::move(targets), std::move(names));
}

Dataset load_features_csv(const std::filesystem::path& path, std::size_t expected_features) {
    RawTable table = read_table(path);
    if (table.rows == 0) throw DataError("'" + path.string() + "' has no data rows");
    if (table.header.size() != expected_features) {
        throw DataError("'" + path.string() + "' has " + std::to_string(table.header.size()) +
                        " feature columns, model expects " + std::to_string(expected_features));
    }
    std::vector<double> placeholder(table.rows, 0.0);
    return Dataset(std::move(table.values), expected_features, std::move(placeholder), std::move(table.header));
}

TrainTestSplit split(const Dataset& data, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("test fraction must lie in (0, 1)");
    }
    const std::size_t n = data.n_rows();
    const auto n_test = static_cast<std::size_t>(std::floor(static_cast<double>(n) * test_fraction));
    if (n_test < 1 || n - n_test < 2) {
        throw std::invalid_argument("test fraction " + std::to_string(test_fraction) + " on " + std::to_string(n) +
                                    " rows leaves an empty or degenerate side");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 engine(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(uniform_index(engine, i + 1));
        std::swap(order[i], order[j]);
    }

    TrainTestSplit out;
    out.test_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train_rows.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
    out.train = data.subset(out.train_rows);
    out.test = data.subset(out.test_rows);
    return out;
}

StandardizationParams fit_standardization(std::span<const double> targets) {
    if (targets.empty()) throw DataError("cannot standardize an empty target vector");
    const double n = static_cast<double>(targets.size());
    const double mean = compensated_sum(targets) / n;
    CompensatedSum ss;
    for (double y : targets) ss.add((y - mean) * (y - mean));
    const double std_dev = std::sqrt(ss.value() / n);
    if (!(std_dev > 0.0) || !std::isfinite(std_dev)) throw DataError("targets have zero variance");
    return {mean, std_dev};
}

std::pair<Dataset, StandardizationParams> standardize_targets(const Dataset& train) {
    const auto params = fit_standardization(train.targets());
    return {apply_standardization(train, params), params};
}

Dataset apply_standardization(const Dataset& data, const StandardizationParams& params) {
    std::vector<double> z;
    z.reserve(data.n_rows());
    for (double y : data.targets()) z.push_back(params.apply(y));
    return data.with_targets(std::move(z));
}

}  // namespace hdiforest
