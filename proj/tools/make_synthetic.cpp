// Writes the synthetic regression tasks used by the acceptance suite:
//   y = sin(2 x1) + 0.5 x2 + eps,  x1, x2 ~ Uniform(-2, 2)
// with Gaussian (sd 0.5) or Gamma(shape 2, scale 1) noise.

#include "hdiforest/model_io.hpp"
#include "hdiforest/synthetic.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic regression CSV"};
    std::size_t rows = 2000;
    std::string noise = "gaussian";
    std::uint64_t seed = 0;
    std::string out;
    app.add_option("--rows", rows, "Number of rows")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--noise", noise, "gaussian or gamma")
        ->check(CLI::IsMember({"gaussian", "gamma"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "Generator seed")->capture_default_str();
    app.add_option("--out", out, "Output CSV")->required();
    CLI11_PARSE(app, argc, argv);

    hdiforest::SyntheticSpec spec;
    spec.n_rows = rows;
    spec.noise = noise == "gamma" ? hdiforest::NoiseKind::gamma : hdiforest::NoiseKind::gaussian;
    spec.seed = seed;
    try {
        hdiforest::write_file_atomic(out, hdiforest::dataset_to_csv(hdiforest::make_synthetic(spec)));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
