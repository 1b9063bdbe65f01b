#pragma once

#include "hdiforest/dataset.hpp"

#include <cstddef>
#include <cstdint>

namespace hdiforest {

enum class NoiseKind { gaussian, gamma };

/// y = sin(2 x1) + 0.5 x2 + eps with x1, x2 ~ Uniform(-2, 2).
/// Gaussian noise: eps ~ Normal(0, noise_sd^2). Gamma noise: eps ~
/// Gamma(gamma_shape, gamma_scale), right-skewed with mode below the mean.
struct SyntheticSpec {
    std::size_t n_rows = 1000;
    NoiseKind noise = NoiseKind::gaussian;
    double noise_sd = 0.5;
    double gamma_shape = 2.0;
    double gamma_scale = 1.0;
    std::uint64_t seed = 0;
};

Dataset make_synthetic(const SyntheticSpec& spec);

/// Noise-free regression function of the synthetic task.
double synthetic_mean(double x1, double x2);

}  // namespace hdiforest
