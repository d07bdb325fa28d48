#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "hkan/datasets.hpp"
#include "hkan/network.hpp"
#include "hkan/rng.hpp"

namespace hkan {

// Hyperparameter search space. Defaults cover the full supported grid:
// depth 1-3, widths 2-1000 (capped at 200 for 3-layer nets), integer sigma
// 1-50, 1-40 basis functions per block, and the standard regularization
// ladder. Identity kind and equal spacing are restricted to the output layer.
struct SearchSpace {
    std::vector<int> layer_counts{1, 2, 3};
    int width_min = 2;
    int width_max = 1000;
    int width_max_deep = 200; // applies when sampling 3-layer nets
    std::vector<BafKind> hidden_kinds{BafKind::Sigmoid, BafKind::Gaussian, BafKind::Relu,
                                      BafKind::Softplus, BafKind::Tanh};
    std::vector<BafKind> output_kinds{BafKind::Sigmoid,  BafKind::Gaussian, BafKind::Relu,
                                      BafKind::Softplus, BafKind::Tanh,     BafKind::Identity};
    int sigma_min = 1;
    int sigma_max = 50;
    int m_min = 1;
    int m_max = 40;
    std::vector<Placement> hidden_placements{Placement::RandomUniform, Placement::DataDriven};
    std::vector<Placement> output_placements{Placement::RandomUniform, Placement::DataDriven,
                                             Placement::EquallySpaced};
    std::vector<double> lambda_phi_grid{0.0, 0.001, 0.01, 0.1, 1.0, 10.0};
};

void validate(const SearchSpace& space);

struct TrialRecord {
    enum class Status { Completed, Pruned, Failed };

    int trial = 0;
    HkanConfig config;
    Status status = Status::Completed;
    // Mean CV RMSE for completed trials; the first-fold RMSE that triggered
    // pruning for pruned ones; NaN for failures.
    double cv_rmse = std::numeric_limits<double>::quiet_NaN();
    double wall_time_ms = 0.0;
    std::string error;
};

struct SearchResult {
    HkanConfig best;
    double best_rmse = std::numeric_limits<double>::quiet_NaN();
    int best_trial = -1;
    std::vector<TrialRecord> log;
};

// One uniform independent draw per dimension, respecting the structural
// constraints (width cap for 3-layer nets, output-only kinds/placements).
HkanConfig sample_config(const SearchSpace& space, RngStream& rng);

// Seeded random search scored by k-fold cross-validation. A trial is pruned
// when its first-fold RMSE exceeds twice the baseline RMSE (the RMSE of the
// mean prediction on the training set); failures are recorded and skipped.
// Ties break toward the first-seen trial.
SearchResult random_search(const SearchSpace& space, const Dataset& ds, int trials, int k,
                           std::uint64_t seed);

nlohmann::ordered_json trial_record_to_json(const TrialRecord& record);
SearchSpace search_space_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json search_space_to_json(const SearchSpace& space);

} // namespace hkan
