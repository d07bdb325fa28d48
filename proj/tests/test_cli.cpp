#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkan/datasets.hpp"
#include "hkan/rng.hpp"

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

const fs::path kWork = fs::temp_directory_path() / "hkan_cli_test";

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HKAN_CLI_PATH) + " " + args;
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ordered_json read_json(const fs::path& path) {
    std::ifstream file(path);
    REQUIRE(file.good());
    ordered_json j;
    file >> j;
    return j;
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream file(path);
    REQUIRE(file.good());
    std::vector<std::string> lines;
    for (std::string line; std::getline(file, line);)
        if (!line.empty()) lines.push_back(line);
    return lines;
}

std::string read_file(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(file), {});
}

std::string q(const fs::path& path) { return "\"" + path.string() + "\""; }

void write_two_layer_config(const fs::path& path) {
    const ordered_json cfg = {
        {"hidden_layers",
         {{{"n_out", 100},
           {"m", 2},
           {"kind", "sigmoid"},
           {"sigma", 1.0},
           {"placement", "data"},
           {"lambda_phi", 0.1}}}},
        {"output_layer",
         {{"kind", "tanh"}, {"sigma", 33.0}, {"placement", "data"}, {"lambda_phi", 10.0}}},
        {"seed", 42}};
    std::ofstream(path) << cfg.dump(2) << '\n';
}

void write_linear_dataset(const fs::path& path) {
    hkan::RngStream rng(7);
    hkan::Dataset ds;
    const Eigen::Index n = 80;
    ds.X.resize(n, 2);
    ds.y.resize(n);
    Eigen::Index row = 0;
    const double corners[4][2] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 8; ++r, ++row) {
            ds.X(row, 0) = corners[c][0];
            ds.X(row, 1) = corners[c][1];
        }
    for (; row < n; ++row) {
        ds.X(row, 0) = rng.uniform(0.05, 0.95);
        ds.X(row, 1) = rng.uniform(0.05, 0.95);
    }
    ds.y = ds.X.col(0) + 2.0 * ds.X.col(1);
    ds.column_names = {"x1", "x2"};
    hkan::save_csv(ds, path.string());
}

} // namespace

TEST_CASE("the full command-line pipeline runs end to end") {
    fs::remove_all(kWork);
    fs::create_directories(kWork);

    // synth
    const fs::path synth_out = kWork / "synth_report.json";
    REQUIRE(run_cli("synth --fn TF1 --train 1000 --test 500 --seed 3 --out-dir " +
                    q(kWork / "tf1") + " > " + q(synth_out)) == 0);
    const ordered_json synth_report = read_json(synth_out);
    CHECK(synth_report.at("rows").at("train") == 1000);
    CHECK(synth_report.at("rows").at("test") == 500);
    REQUIRE(fs::exists(kWork / "tf1" / "train.csv"));
    REQUIRE(fs::exists(kWork / "tf1" / "test.csv"));

    // train
    const fs::path cfg_path = kWork / "config.json";
    write_two_layer_config(cfg_path);
    const fs::path model_path = kWork / "model.json";
    const fs::path train_out = kWork / "train_report.json";
    REQUIRE(run_cli("train --train " + q(kWork / "tf1" / "train.csv") + " --config " +
                    q(cfg_path) + " --model-out " + q(model_path) + " > " + q(train_out)) == 0);
    const ordered_json train_report = read_json(train_out);
    CHECK(train_report.at("training_rmse").get<double>() < 0.01);
    CHECK(train_report.at("layer_widths") == ordered_json::array({100, 1}));
    REQUIRE(fs::exists(model_path));

    // retrain: byte-identical model
    const fs::path model_again = kWork / "model_again.json";
    REQUIRE(run_cli("train --train " + q(kWork / "tf1" / "train.csv") + " --config " +
                    q(cfg_path) + " --model-out " + q(model_again) + " > /dev/null") == 0);
    CHECK(read_file(model_path) == read_file(model_again));

    // retrain with a different seed: different model
    const fs::path model_seeded = kWork / "model_seeded.json";
    REQUIRE(run_cli("train --train " + q(kWork / "tf1" / "train.csv") + " --config " +
                    q(cfg_path) + " --seed 9 --model-out " + q(model_seeded) + " > /dev/null") ==
            0);
    CHECK(read_file(model_path) != read_file(model_seeded));

    // eval in single-score mode
    const fs::path eval_out = kWork / "eval_report.json";
    REQUIRE(run_cli("eval --model " + q(model_path) + " --data " + q(kWork / "tf1" / "test.csv") +
                    " > " + q(eval_out)) == 0);
    const ordered_json eval_report = read_json(eval_out);
    CHECK(eval_report.at("rmse").get<double>() < 0.01);
    CHECK(eval_report.at("rows") == 500);

    // predict
    const fs::path pred_path = kWork / "pred.csv";
    REQUIRE(run_cli("predict --model " + q(model_path) + " --data " +
                    q(kWork / "tf1" / "test.csv") + " --out " + q(pred_path)) == 0);
    const std::vector<std::string> pred_lines = read_lines(pred_path);
    REQUIRE(pred_lines.size() == 501);
    CHECK(pred_lines[0] == "prediction");

    // importance
    const fs::path imp_out = kWork / "importance.json";
    REQUIRE(run_cli("importance --model " + q(model_path) + " > " + q(imp_out)) == 0);
    CHECK(read_json(imp_out).at("importance").size() == 2);
}

TEST_CASE("search emits a config that train accepts") {
    fs::create_directories(kWork);
    const fs::path data_path = kWork / "linear.csv";
    write_linear_dataset(data_path);

    const fs::path space_path = kWork / "space.json";
    std::ofstream(space_path) << R"({"layer_counts": [1], "output_kinds": ["identity"]})" << '\n';

    const fs::path best_path = kWork / "best.json";
    const fs::path log_path = kWork / "trials.jsonl";
    const fs::path search_out = kWork / "search_report.json";
    REQUIRE(run_cli("search --train " + q(data_path) + " --trials 3 --folds 4 --seed 5 --space " +
                    q(space_path) + " --out " + q(best_path) + " --log " + q(log_path) + " > " +
                    q(search_out)) == 0);

    const ordered_json summary = read_json(search_out);
    CHECK(summary.at("best_trial") == 0);
    CHECK(summary.at("best_cv_rmse").get<double>() <= 1e-9);

    const std::vector<std::string> trials = read_lines(log_path);
    REQUIRE(trials.size() == 3);
    for (const std::string& line : trials) {
        const ordered_json record = ordered_json::parse(line);
        CHECK(record.at("status") == "completed");
        CHECK(record.at("config").contains("output_layer"));
    }

    // the emitted config trains directly
    REQUIRE(run_cli("train --train " + q(data_path) + " --config " + q(best_path) +
                    " --model-out " + q(kWork / "best_model.json") + " > /dev/null") == 0);

    // repeated-runs mode; the identity pipeline is seed-independent
    const fs::path runs_out = kWork / "runs_report.json";
    REQUIRE(run_cli("eval --config " + q(best_path) + " --train " + q(data_path) + " --test " +
                    q(data_path) + " --runs 3 > " + q(runs_out)) == 0);
    const ordered_json runs_report = read_json(runs_out);
    CHECK(runs_report.at("runs") == 3);
    CHECK(runs_report.at("per_run_rmse").size() == 3);
    CHECK(runs_report.at("iqr").get<double>() == 0.0);
    CHECK(runs_report.at("median_rmse").get<double>() <= 1e-9);
}

TEST_CASE("failures map to documented exit codes") {
    fs::create_directories(kWork);

    // unknown flag / missing required option / no subcommand
    CHECK(run_cli("train --nope 2> /dev/null") == 1);
    CHECK(run_cli("synth 2> /dev/null") == 1);
    CHECK(run_cli("2> /dev/null") == 1);

    // unknown target function name
    CHECK(run_cli("synth --fn TF9 --train 10 --test 10 --out-dir " + q(kWork / "bad") +
                  " 2> /dev/null") == 2);

    // missing input file
    CHECK(run_cli("importance --model " + q(kWork / "no_such_model.json") + " 2> /dev/null") == 2);

    // prediction data whose width disagrees with the trained model
    const fs::path cfg_path = kWork / "wide_config.json";
    write_two_layer_config(cfg_path);
    const fs::path narrow_csv = kWork / "narrow.csv";
    std::ofstream(narrow_csv) << "a,b,y\n0.1,0.2,0.3\n0.4,0.5,0.6\n0.7,0.8,0.9\n0.2,0.9,1.0\n";
    const fs::path wide_csv = kWork / "wide.csv";
    std::ofstream(wide_csv) << "a,b,c,y\n0.1,0.2,0.3,0.4\n0.5,0.6,0.7,0.8\n";
    const fs::path model_path = kWork / "narrow_model.json";
    REQUIRE(run_cli("train --train " + q(narrow_csv) + " --config " + q(cfg_path) +
                    " --model-out " + q(model_path) + " > /dev/null") == 0);
    CHECK(run_cli("predict --model " + q(model_path) + " --data " + q(wide_csv) + " --out " +
                  q(kWork / "never.csv") + " 2> /dev/null") == 2);

    // eval with mixed modes is rejected by the option parser
    CHECK(run_cli("eval --model " + q(model_path) + " --data " + q(narrow_csv) + " --config " +
                  q(cfg_path) + " --train " + q(narrow_csv) + " --test " + q(narrow_csv) +
                  " 2> /dev/null") == 1);

    fs::remove_all(kWork);
}
