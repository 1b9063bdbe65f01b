#include "cli/commands.hpp"

#include "cli/alpha_grid.hpp"
#include "cli/oracle_check.hpp"
#include "hdiforest/dataset.hpp"
#include "hdiforest/error.hpp"
#include "hdiforest/eval.hpp"
#include "hdiforest/forest.hpp"
#include "hdiforest/interval.hpp"
#include "hdiforest/model_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdiforest::cli {

namespace {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Target given as a header name, or as "#<index>" for a zero-based column.
TargetColumn parse_target(const std::string& text) {
    if (!text.empty() && text.front() == '#') {
        try {
            return static_cast<std::size_t>(std::stoul(text.substr(1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad target column index '" + text + "'");
        }
    }
    return text;
}

struct ForestFlags {
    std::size_t trees = 500;
    std::size_t min_leaf = 5;
    std::size_t max_features = 0;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--trees", trees, "Number of trees")->check(CLI::PositiveNumber)->capture_default_str();
        cmd.add_option("--min-leaf", min_leaf, "Minimum bootstrap samples per child")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd.add_option("--max-features", max_features, "Columns tried per split (0 = all p)")
            ->capture_default_str();
    }

    [[nodiscard]] ForestConfig config(std::size_t n_features) const {
        if (max_features > n_features) {
            throw std::invalid_argument("--max-features " + std::to_string(max_features) + " exceeds the " +
                                        std::to_string(n_features) + " feature columns");
        }
        return {trees, min_leaf, max_features};
    }
};

/// Shared inputs of evaluate and sweep: either a saved model plus a test CSV,
/// or a full CSV that is split, trained on, and scored.
struct EvalFlags {
    std::string data;
    std::string target;
    std::string model;
    double test_fraction = 0.0;
    std::size_t repeats = 1;
    std::uint64_t seed = kDefaultSeed;
    ForestFlags forest;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--data", data, "CSV with features and the target column")->required();
        cmd.add_option("--target", target, "Target column name (or #index)")->required();
        cmd.add_option("--model", model, "Saved model; --data is then the test set");
        cmd.add_option("--test-fraction", test_fraction, "Hold-out fraction when training in place (e.g. 0.2)");
        cmd.add_option("--repeats", repeats, "Random splits to average over")->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd.add_option("--seed", seed, "Split/forest seed")->capture_default_str();
        forest.add_to(cmd);
    }

    std::vector<PIQualityReport> run(std::span<const double> alphas, std::span<const IntervalMethod> methods) const {
        const Dataset dataset = load_csv(data, parse_target(target));
        if (!model.empty()) {
            if (test_fraction != 0.0) throw std::invalid_argument("--model and --test-fraction are exclusive");
            if (repeats != 1) throw std::invalid_argument("--repeats needs --test-fraction");
            const Forest forest = load_forest(model);
            if (dataset.n_features() != forest.n_features()) {
                throw DataError("data has " + std::to_string(dataset.n_features()) + " feature columns, model expects " +
                                std::to_string(forest.n_features()));
            }
            return sweep(forest, dataset, alphas, methods);
        }
        if (test_fraction == 0.0) throw std::invalid_argument("give --model or --test-fraction");
        return repeated_sweep(dataset, forest.config(dataset.n_features()), test_fraction, seed, repeats, alphas,
                              methods);
    }
};

int cmd_train(const std::string& data, const std::string& target, const ForestFlags& flags, std::uint64_t seed,
              double test_fraction, const std::string& test_out, const std::string& out_path, std::ostream& out) {
    Dataset dataset = load_csv(data, parse_target(target));
    if (test_fraction != 0.0) {
        auto parts = split(dataset, test_fraction, seed);
        if (!test_out.empty()) write_file_atomic(test_out, dataset_to_csv(parts.test, target));
        dataset = std::move(parts.train);
    } else if (!test_out.empty()) {
        throw std::invalid_argument("--test-out needs --test-fraction");
    }

    const auto start = std::chrono::steady_clock::now();
    const Forest forest = fit_forest(dataset, flags.config(dataset.n_features()), seed);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    save_forest(forest, out_path);
    out << "n=" << dataset.n_rows() << " p=" << dataset.n_features() << " m=" << forest.trees().size()
        << " fit_seconds=" << seconds << "\n";
    return kExitOk;
}

int cmd_predict(const std::string& model_path, const std::string& data, const std::string& drop_target, double alpha,
                IntervalMethod method, const std::string& out_path, std::ostream& out) {
    const Forest forest = load_forest(model_path);
    const Dataset queries = drop_target.empty() ? load_features_csv(data, forest.n_features())
                                                : load_csv(data, parse_target(drop_target));
    if (queries.n_features() != forest.n_features()) {
        throw DataError("data has " + std::to_string(queries.n_features()) + " feature columns, model expects " +
                        std::to_string(forest.n_features()));
    }
    std::vector<ForestInterval> intervals;
    intervals.reserve(queries.n_rows());
    for (std::size_t i = 0; i < queries.n_rows(); ++i) {
        intervals.push_back(predict_interval(forest, queries.row(i), alpha, method));
    }
    write_file_atomic(out_path, intervals_to_csv(intervals));
    out << "wrote " << intervals.size() << " intervals to " << out_path << "\n";
    return kExitOk;
}

int cmd_oracle_check(std::size_t cases, std::size_t max_support, std::uint64_t seed, bool mutant, std::ostream& out,
                     std::ostream& err) {
    const auto result =
        run_oracle_check(cases, max_support, seed, mutant ? IntervalSolver(mutant_alpha_threshold) : IntervalSolver{});
    out << result.passed << "/" << result.cases << " passed\n";
    if (result.ok()) return kExitOk;
    err << "hdi mismatches: " << result.hdi_mismatches
        << ", j_opt monotonicity violations: " << result.monotonicity_violations << "\n"
        << "first counterexample: " << *result.first_failure << "\n";
    return kExitOracleFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Highest-density prediction intervals from random forests"};
    app.name("hdiforest");
    app.require_subcommand(1);

    // train
    auto* train = app.add_subcommand("train", "Fit a forest and write the model JSON");
    std::string train_data;
    std::string train_target;
    std::string train_out;
    std::string train_test_out;
    double train_test_fraction = 0.0;
    std::uint64_t train_seed = kDefaultSeed;
    ForestFlags train_forest;
    train->add_option("--data", train_data, "Training CSV")->required();
    train->add_option("--target", train_target, "Target column name (or #index)")->required();
    train->add_option("--out", train_out, "Model output path")->required();
    train->add_option("--seed", train_seed, "Seed for bootstrap, feature draws and split")->capture_default_str();
    train->add_option("--test-fraction", train_test_fraction, "Hold out this fraction before training");
    train->add_option("--test-out", train_test_out, "Write the held-out rows here");
    train_forest.add_to(*train);

    // predict
    auto* predict = app.add_subcommand("predict", "Write per-row prediction intervals");
    std::string predict_model;
    std::string predict_data;
    std::string predict_drop;
    std::string predict_out;
    double predict_alpha = 0.05;
    std::string predict_method = "hdi";
    predict->add_option("--model", predict_model, "Model JSON")->required();
    predict->add_option("--data", predict_data, "Feature CSV (header row, model's feature columns)")->required();
    predict->add_option("--target", predict_drop, "Column to ignore if the CSV still carries the response");
    predict->add_option("--alpha", predict_alpha, "Miss probability in [0, 1)")->capture_default_str();
    predict->add_option("--method", predict_method, "hdi or equal-tailed")->capture_default_str();
    predict->add_option("--out", predict_out, "Intervals CSV output path")->required();

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "PICP/MPIW report for one alpha");
    EvalFlags evaluate_flags;
    double evaluate_alpha = 0.05;
    std::string evaluate_method = "hdi";
    std::string evaluate_out;
    evaluate_flags.add_to(*evaluate_cmd);
    evaluate_cmd->add_option("--alpha", evaluate_alpha, "Miss probability in [0, 1)")->capture_default_str();
    evaluate_cmd->add_option("--method", evaluate_method, "hdi or equal-tailed")->capture_default_str();
    evaluate_cmd->add_option("--out", evaluate_out, "Report JSON output path")->required();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "PICP/MPIW curve over an alpha grid");
    EvalFlags sweep_flags;
    std::string sweep_alphas = "0.30:0.05:0.05";
    std::string sweep_methods = "hdi,equal-tailed";
    std::string sweep_out;
    sweep_flags.add_to(*sweep_cmd);
    sweep_cmd->add_option("--alphas", sweep_alphas, "start:stop:step or comma list")->capture_default_str();
    sweep_cmd->add_option("--methods", sweep_methods, "Comma list of hdi, equal-tailed")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Curve CSV output path")->required();

    // oracle-check
    auto* oracle = app.add_subcommand("oracle-check", "Compare the linear HDI sweep with brute force");
    std::size_t oracle_cases = 1000;
    std::size_t oracle_max_support = 200;
    std::uint64_t oracle_seed = 1;
    bool oracle_mutant = false;
    oracle->add_option("--cases", oracle_cases, "Random instances")->capture_default_str();
    oracle->add_option("--max-support", oracle_max_support, "Largest support size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    oracle->add_option("--seed", oracle_seed, "Instance generator seed")->capture_default_str();
    oracle->add_flag("--inject-mutant", oracle_mutant,
                     "Check a sweep that thresholds mass at alpha instead of 1 - alpha (should fail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (train->parsed()) {
            return cmd_train(train_data, train_target, train_forest, train_seed, train_test_fraction, train_test_out,
                             train_out, out);
        }
        if (predict->parsed()) {
            detail::check_alpha(predict_alpha);
            return cmd_predict(predict_model, predict_data, predict_drop, predict_alpha,
                               parse_interval_method(predict_method), predict_out, out);
        }
        if (evaluate_cmd->parsed()) {
            detail::check_alpha(evaluate_alpha);
            const double alphas[] = {evaluate_alpha};
            const IntervalMethod methods[] = {parse_interval_method(evaluate_method)};
            const auto reports = evaluate_flags.run(alphas, methods);
            write_file_atomic(evaluate_out, report_to_json(reports.front()));
            out << report_to_json(reports.front());
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            const auto alphas = parse_alpha_grid(sweep_alphas);
            std::vector<IntervalMethod> methods;
            std::size_t pos = 0;
            for (;;) {
                const auto comma = sweep_methods.find(',', pos);
                methods.push_back(parse_interval_method(sweep_methods.substr(pos, comma - pos)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            const auto reports = sweep_flags.run(alphas, methods);
            write_file_atomic(sweep_out, reports_to_csv(reports));
            out << "wrote " << reports.size() << " rows to " << sweep_out << "\n";
            return kExitOk;
        }
        if (oracle->parsed()) {
            return cmd_oracle_check(oracle_cases, oracle_max_support, oracle_seed, oracle_mutant, out, err);
        }
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace hdiforest::cli
