#include "hdiforest/model_io.hpp"

#include "hdiforest/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace hdiforest {

using nlohmann::json;

namespace {

json node_to_json(const TreeNode& node) {
    if (const auto* split = std::get_if<InternalNode>(&node)) {
        return {{"type", "split"},
                {"feature", split->feature},
                {"threshold", split->threshold},
                {"left", split->left},
                {"right", split->right}};
    }
    const auto& leaf = std::get<LeafNode>(node);
    return {{"type", "leaf"}, {"leaf_id", leaf.leaf_id}, {"members", leaf.members}, {"mean", leaf.mean}};
}

TreeNode node_from_json(const json& j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "split") {
        return InternalNode{j.at("feature").get<std::size_t>(), j.at("threshold").get<double>(),
                            j.at("left").get<std::size_t>(), j.at("right").get<std::size_t>()};
    }
    if (type == "leaf") {
        return LeafNode{j.at("leaf_id").get<std::size_t>(), j.at("members").get<std::vector<std::size_t>>(),
                        j.at("mean").get<double>()};
    }
    throw DataError("unknown node type '" + type + "'");
}

}  // namespace

std::string serialize_forest(const Forest& forest) {
    json doc;
    doc["format"] = "hdiforest-model";
    doc["format_version"] = kModelFormatVersion;
    doc["config"] = {{"n_trees", forest.config().n_trees},
                     {"min_leaf", forest.config().min_leaf},
                     {"max_features", forest.config().max_features},
                     {"seed", forest.seed()}};
    doc["n_features"] = forest.n_features();
    doc["standardization"] = {{"target_mean", forest.standardization().target_mean},
                              {"target_std", forest.standardization().target_std}};
    doc["targets"] = std::vector<double>(forest.targets().begin(), forest.targets().end());
    json trees = json::array();
    for (const Tree& tree : forest.trees()) {
        json nodes = json::array();
        for (const auto& node : tree.nodes()) nodes.push_back(node_to_json(node));
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    doc["trees"] = std::move(trees);
    return doc.dump() + "\n";
}

Forest parse_forest(const std::string& text) {
    try {
        const json doc = json::parse(text);
        if (doc.value("format", std::string{}) != "hdiforest-model") throw DataError("not an hdiforest model file");
        const int version = doc.at("format_version").get<int>();
        if (version != kModelFormatVersion) {
            throw DataError("unsupported model format_version " + std::to_string(version));
        }
        const auto& cfg = doc.at("config");
        ForestConfig config;
        config.n_trees = cfg.at("n_trees").get<std::size_t>();
        config.min_leaf = cfg.at("min_leaf").get<std::size_t>();
        config.max_features = cfg.at("max_features").get<std::size_t>();
        const auto seed = cfg.at("seed").get<std::uint64_t>();
        const auto n_features = doc.at("n_features").get<std::size_t>();
        const StandardizationParams params{doc.at("standardization").at("target_mean").get<double>(),
                                           doc.at("standardization").at("target_std").get<double>()};

        std::vector<Tree> trees;
        for (const auto& t : doc.at("trees")) {
            std::vector<TreeNode> nodes;
            for (const auto& n : t.at("nodes")) nodes.push_back(node_from_json(n));
            trees.emplace_back(std::move(nodes), n_features);
        }
        return Forest(std::move(trees), doc.at("targets").get<std::vector<double>>(), params, n_features, config,
                      seed);
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed model file: ") + e.what());
    }
}

Forest load_forest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_forest(buffer.str());
}

void save_forest(const Forest& forest, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_forest(forest));
}

std::string report_to_json(const PIQualityReport& report) {
    const json doc = {{"alpha", report.alpha},
                      {"method", std::string(to_string(report.method))},
                      {"picp", report.picp},
                      {"mpiw_standardized", report.mpiw_standardized},
                      {"mpiw_raw", report.mpiw_raw},
                      {"n_test", report.n_test}};
    return doc.dump(2) + "\n";
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("failed to format double");
    return std::string(buf, ptr);
}

std::string reports_to_csv(std::span<const PIQualityReport> reports) {
    std::string out = "alpha,method,picp,mpiw_standardized,mpiw_raw\n";
    for (const auto& r : reports) {
        out += format_double(r.alpha) + "," + std::string(to_string(r.method)) + "," + format_double(r.picp) + "," +
               format_double(r.mpiw_standardized) + "," + format_double(r.mpiw_raw) + "\n";
    }
    return out;
}

std::string intervals_to_csv(std::span<const ForestInterval> intervals) {
    std::string out = "row,lower_raw,upper_raw,lower_std,upper_std,estimated_coverage\n";
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& pi = intervals[i];
        out += std::to_string(i) + "," + format_double(pi.lower_raw) + "," + format_double(pi.upper_raw) + "," +
               format_double(pi.standardized.lower) + "," + format_double(pi.standardized.upper) + "," +
               format_double(pi.standardized.estimated_coverage) + "\n";
    }
    return out;
}

std::string dataset_to_csv(const Dataset& data, const std::string& target_name) {
    std::string out;
    const auto& names = data.column_names();
    for (std::size_t j = 0; j < data.n_features(); ++j) {
        out += (j < names.size() ? names[j] : "x" + std::to_string(j + 1)) + ",";
    }
    out += target_name + "\n";
    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        for (double v : data.row(i)) out += format_double(v) + ",";
        out += format_double(data.targets()[i]) + "\n";
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw DataError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw DataError("cannot move output into place at '" + path.string() + "'");
    }
}

}  // namespace hdiforest
