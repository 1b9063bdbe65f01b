#include "hdiforest/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hdiforest {

double synthetic_mean(double x1, double x2) { return std::sin(2.0 * x1) + 0.5 * x2; }

Dataset make_synthetic(const SyntheticSpec& spec) {
    if (spec.n_rows < 1) throw std::invalid_argument("synthetic dataset needs at least one row");
    std::mt19937_64 engine(spec.seed);
    std::uniform_real_distribution<double> feature(-2.0, 2.0);
    std::normal_distribution<double> gaussian(0.0, spec.noise_sd);
    std::gamma_distribution<double> gamma(spec.gamma_shape, spec.gamma_scale);

    std::vector<double> features;
    std::vector<double> targets;
    features.reserve(spec.n_rows * 2);
    targets.reserve(spec.n_rows);
    for (std::size_t i = 0; i < spec.n_rows; ++i) {
        const double x1 = feature(engine);
        const double x2 = feature(engine);
        const double eps = spec.noise == NoiseKind::gaussian ? gaussian(engine) : gamma(engine);
        features.push_back(x1);
        features.push_back(x2);
        targets.push_back(synthetic_mean(x1, x2) + eps);
    }
    return Dataset(std::move(features), 2, std::move(targets), {"x1", "x2"});
}

}  // namespace hdiforest
