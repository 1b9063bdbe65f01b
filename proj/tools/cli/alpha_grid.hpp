#pragma once

#include <string_view>
#include <vector>

namespace hdiforest::cli {

/// Parses "a,b,c" or "start:stop:step" (stop inclusive, step > 0, direction
/// taken from start/stop). Values are rounded to 12 decimals so grids such as
/// 0.30:0.05:0.05 produce clean numbers. Throws std::invalid_argument.
std::vector<double> parse_alpha_grid(std::string_view spec);

}  // namespace hdiforest::cli
