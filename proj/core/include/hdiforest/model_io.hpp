#pragma once

#include "hdiforest/eval.hpp"
#include "hdiforest/forest.hpp"
#include "hdiforest/interval.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace hdiforest {

inline constexpr int kModelFormatVersion = 1;

/// Versioned JSON model document:
/// {format, format_version, config, n_features, standardization, targets,
///  trees: [{nodes: [...]}]}. Internal nodes are
/// {"type":"split","feature","threshold","left","right"}; leaves are
/// {"type":"leaf","leaf_id","members","mean"}. Reals use shortest round-trip
/// formatting, so parse(serialize(f)) reproduces every field exactly.
std::string serialize_forest(const Forest& forest);
Forest parse_forest(const std::string& text);

Forest load_forest(const std::filesystem::path& path);
void save_forest(const Forest& forest, const std::filesystem::path& path);

/// {"alpha","method","picp","mpiw_standardized","mpiw_raw","n_test"}
std::string report_to_json(const PIQualityReport& report);
/// Header alpha,method,picp,mpiw_standardized,mpiw_raw then one row per report.
std::string reports_to_csv(std::span<const PIQualityReport> reports);

/// Header row,lower_raw,upper_raw,lower_std,upper_std,estimated_coverage.
std::string intervals_to_csv(std::span<const ForestInterval> intervals);

/// Feature columns then the target column named `target_name`.
std::string dataset_to_csv(const Dataset& data, const std::string& target_name = "y");

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace hdiforest
