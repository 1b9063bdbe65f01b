#include "cli/alpha_grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hdiforest::cli {

namespace {

double parse_number(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("malformed alpha grid entry '" + std::string(text) + "'");
    }
    return value;
}

double round12(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

std::vector<double> parse_alpha_grid(std::string_view spec) {
    std::vector<double> alphas;
    if (spec.find(':') != std::string_view::npos) {
        const auto first = spec.find(':');
        const auto second = spec.find(':', first + 1);
        if (second == std::string_view::npos || spec.find(':', second + 1) != std::string_view::npos) {
            throw std::invalid_argument("alpha range must look like start:stop:step");
        }
        const double start = parse_number(spec.substr(0, first));
        const double stop = parse_number(spec.substr(first + 1, second - first - 1));
        const double step = std::fabs(parse_number(spec.substr(second + 1)));
        if (!(step > 0.0)) throw std::invalid_argument("alpha range step must be nonzero");
        const double direction = stop >= start ? 1.0 : -1.0;
        const auto count = static_cast<std::size_t>(std::floor(std::fabs(stop - start) / step + 1e-9)) + 1;
        if (count > 100000) throw std::invalid_argument("alpha range has too many points");
        for (std::size_t k = 0; k < count; ++k) {
            alphas.push_back(round12(start + direction * step * static_cast<double>(k)));
        }
    } else {
        std::size_t pos = 0;
        while (pos <= spec.size()) {
            const auto comma = spec.find(',', pos);
            const auto end = comma == std::string_view::npos ? spec.size() : comma;
            alphas.push_back(parse_number(spec.substr(pos, end - pos)));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    for (double a : alphas) {
        if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("alpha values must lie in [0, 1)");
    }
    return alphas;
}

}  // namespace hdiforest::cli
