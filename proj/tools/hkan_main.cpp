#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hkan/errors.hpp"
#include "hkan/evaluation.hpp"
#include "hkan/model_io.hpp"
#include "hkan/network.hpp"
#include "hkan/search.hpp"

namespace {

using hkan::ordered_json;

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

int run_synth(const std::string& fn, int n_train, int n_test, std::uint64_t seed,
              const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto [train, test] = hkan::gen_tf(hkan::target_fn_from_string(fn), n_train, n_test, seed);
    hkan::save_csv(train, out_dir + "/train.csv");
    hkan::save_csv(test, out_dir + "/test.csv");
    ordered_json report;
    report["train"] = out_dir + "/train.csv";
    report["test"] = out_dir + "/test.csv";
    report["rows"] = {{"train", train.rows()}, {"test", test.rows()}};
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_train(const std::string& train_path, const std::string& config_path,
              const std::string& model_out, bool seed_given, std::uint64_t seed) {
    hkan::HkanConfig cfg = hkan::load_config(config_path);
    if (seed_given) cfg.seed = seed;
    const hkan::Dataset train = hkan::load_csv(train_path);

    const auto start = std::chrono::steady_clock::now();
    const hkan::HkanModel model = hkan::train_model(train, cfg);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    hkan::save_model(model, model_out);

    ordered_json report;
    report["training_rmse"] = hkan::rmse(train.y, hkan::predict(model, train.X));
    ordered_json widths = ordered_json::array();
    for (const hkan::Layer& layer : model.layers) widths.push_back(layer.nodes.size());
    report["layer_widths"] = std::move(widths);
    report["wall_time_ms"] = wall_ms;
    report["model"] = model_out;
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
    const hkan::HkanModel model = hkan::load_model(model_path);
    const hkan::Dataset data = hkan::load_csv(data_path);
    const Eigen::VectorXd pred = hkan::predict(model, data.X);

    std::ofstream file(out_path);
    if (!file) throw hkan::DataError("cannot write " + out_path);
    file << "prediction\n";
    for (Eigen::Index i = 0; i < pred.size(); ++i) file << format_double(pred(i)) << '\n';
    if (!file) throw hkan::DataError("write to " + out_path + " failed");
    return 0;
}

int run_eval_model(const std::string& model_path, const std::string& data_path) {
    const hkan::HkanModel model = hkan::load_model(model_path);
    const hkan::Dataset data = hkan::load_csv(data_path);
    ordered_json report;
    report["rmse"] = hkan::rmse(data.y, hkan::predict(model, data.X));
    report["rows"] = data.rows();
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_eval_runs(const std::string& config_path, const std::string& train_path,
                  const std::string& test_path, int runs, bool seed_given, std::uint64_t seed) {
    hkan::HkanConfig cfg = hkan::load_config(config_path);
    if (seed_given) cfg.seed = seed;
    const hkan::Dataset train = hkan::load_csv(train_path);
    const hkan::Dataset test = hkan::load_csv(test_path);
    const hkan::RunStats stats = hkan::repeated_runs(cfg, train, test, runs);
    std::cout << hkan::run_stats_to_json(stats).dump(2) << '\n';
    return 0;
}

int run_importance(const std::string& model_path) {
    const hkan::HkanModel model = hkan::load_model(model_path);
    const Eigen::VectorXd importance = hkan::input_importance(model);
    ordered_json report;
    ordered_json values = ordered_json::array();
    for (Eigen::Index p = 0; p < importance.size(); ++p) values.push_back(importance(p));
    report["importance"] = std::move(values);
    std::cout << report.dump(2) << '\n';
    return 0;
}

int run_search(const std::string& train_path, int trials, int folds, std::uint64_t seed,
               const std::string& space_path, const std::string& out_path,
               const std::string& log_path) {
    hkan::SearchSpace space;
    if (!space_path.empty()) {
        std::ifstream file(space_path);
        if (!file) throw hkan::DataError("cannot open " + space_path);
        ordered_json j;
        try {
            file >> j;
        } catch (const nlohmann::json::parse_error& e) {
            throw hkan::ParseError(space_path + ": " + e.what());
        }
        space = hkan::search_space_from_json(j);
    }

    const hkan::Dataset ds = hkan::load_csv(train_path);
    const hkan::SearchResult result = hkan::random_search(space, ds, trials, folds, seed);

    std::ostream* log_stream = &std::cout;
    std::ofstream log_file;
    if (!log_path.empty()) {
        log_file.open(log_path);
        if (!log_file) throw hkan::DataError("cannot write " + log_path);
        log_stream = &log_file;
    }
    for (const hkan::TrialRecord& record : result.log)
        *log_stream << hkan::trial_record_to_json(record).dump() << '\n';

    if (result.best_trial < 0)
        throw hkan::InvalidInput("no trial completed; cannot select a best configuration");
    hkan::save_config(result.best, out_path);

    ordered_json summary;
    summary["best_trial"] = result.best_trial;
    summary["best_cv_rmse"] = result.best_rmse;
    summary["config"] = out_path;
    std::cout << summary.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"HKAN: hierarchical Kolmogorov-Arnold network for regression"};
    app.require_subcommand(1);

    std::string fn = "TF1";
    std::string train_path;
    std::string test_path;
    std::string config_path;
    std::string model_path;
    std::string data_path;
    std::string out_path;
    std::string out_dir = ".";
    std::string space_path;
    std::string log_path;
    int n_train = 1000;
    int n_test = 1000;
    int runs = 1;
    int trials = 10;
    int folds = 5;
    std::uint64_t seed = 0;

    auto* synth = app.add_subcommand("synth", "Generate a synthetic benchmark dataset");
    synth->add_option("--fn", fn, "Target function: TF1..TF5, TF5-5")->required();
    synth->add_option("--train", n_train, "Training rows")->required();
    synth->add_option("--test", n_test, "Test rows")->required();
    synth->add_option("--seed", seed, "Generator seed");
    synth->add_option("--out-dir", out_dir, "Output directory for train.csv/test.csv");

    auto* train = app.add_subcommand("train", "Fit a model to a training CSV");
    train->add_option("--train", train_path, "Training CSV")->required();
    train->add_option("--config", config_path, "Architecture config JSON")->required();
    auto* train_seed = train->add_option("--seed", seed, "Override the config seed");
    train->add_option("--model-out", model_path, "Output model JSON")->required();

    auto* predict = app.add_subcommand("predict", "Predict with a trained model");
    predict->add_option("--model", model_path, "Model JSON")->required();
    predict->add_option("--data", data_path, "Input CSV (target column ignored)")->required();
    predict->add_option("--out", out_path, "Output predictions CSV")->required();

    auto* eval = app.add_subcommand("eval", "Score a model or a config");
    auto* eval_model = eval->add_option("--model", model_path, "Model JSON (single-score mode)");
    auto* eval_data = eval->add_option("--data", data_path, "Scoring CSV (single-score mode)");
    auto* eval_config = eval->add_option("--config", config_path, "Config JSON (repeated-runs mode)");
    auto* eval_train = eval->add_option("--train", train_path, "Training CSV (repeated-runs mode)");
    auto* eval_test = eval->add_option("--test", test_path, "Test CSV (repeated-runs mode)");
    eval->add_option("--runs", runs, "Training sessions with seeds seed+0..runs-1");
    auto* eval_seed = eval->add_option("--seed", seed, "Override the config seed");
    eval_model->needs(eval_data);
    eval_config->needs(eval_train, eval_test);
    eval_model->excludes(eval_config);

    auto* importance = app.add_subcommand("importance", "Per-input importance of a trained model");
    importance->add_option("--model", model_path, "Model JSON")->required();

    auto* search = app.add_subcommand("search", "Random hyperparameter search");
    search->add_option("--train", train_path, "Dataset CSV (cross-validated in-place)")->required();
    search->add_option("--trials", trials, "Number of sampled configurations");
    search->add_option("--folds", folds, "Cross-validation folds");
    search->add_option("--seed", seed, "Search seed");
    search->add_option("--space", space_path, "Search space JSON (defaults to the full grid)");
    search->add_option("--out", out_path, "Output path for the best config JSON")->required();
    search->add_option("--log", log_path, "Trial log JSON-lines path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) return run_synth(fn, n_train, n_test, seed, out_dir);
        if (train->parsed())
            return run_train(train_path, config_path, model_path, train_seed->count() > 0, seed);
        if (predict->parsed()) return run_predict(model_path, data_path, out_path);
        if (eval->parsed()) {
            if (eval_model->count() > 0) return run_eval_model(model_path, data_path);
            if (eval_config->count() > 0)
                return run_eval_runs(config_path, train_path, test_path, runs,
                                     eval_seed->count() > 0, seed);
            std::cerr << "eval: pass either --model/--data or --config/--train/--test\n";
            return 1;
        }
        if (importance->parsed()) return run_importance(model_path);
        if (search->parsed())
            return run_search(train_path, trials, folds, seed, space_path, out_path, log_path);
    } catch (const hkan::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const hkan::DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
