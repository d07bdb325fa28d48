#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "hkan/datasets.hpp"
#include "hkan/network.hpp"

namespace hkan {

double rmse(const Eigen::VectorXd& y, const Eigen::VectorXd& y_hat);

// 1 - SSE/SST; defined as 0 when the target is constant.
double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& y_hat);

// Linear-interpolation quantile of a sample (values need not be sorted).
double quantile(std::vector<double> values, double p);

// Distribution of test RMSE over repeated training sessions.
struct RunStats {
    double median = 0.0;
    double iqr = 0.0;
    std::vector<double> per_run_rmse;
};

// Seeded balanced fold assignment: returns fold index per row, sizes
// differing by at most one.
std::vector<int> fold_assignment(Eigen::Index n, int k, std::uint64_t seed);

// Rows belonging to fold f (in_fold) or to its complement (!in_fold).
Dataset select_fold(const Dataset& ds, const std::vector<int>& fold, int f, bool in_fold);

// Per-fold validation RMSE. Normalization is refit on each fold's training
// portion; scores are in the dataset's target units.
std::vector<double> kfold_rmses(const HkanConfig& cfg, const Dataset& ds, int k,
                                std::uint64_t seed);

// Mean of the per-fold RMSEs.
double kfold_cv(const HkanConfig& cfg, const Dataset& ds, int k, std::uint64_t seed);

// Runs `runs` training sessions with seeds cfg.seed + i and collects the test
// RMSE distribution (median and IQR via linear-interpolation quantiles).
RunStats repeated_runs(const HkanConfig& cfg, const Dataset& train, const Dataset& test,
                       int runs);

nlohmann::ordered_json run_stats_to_json(const RunStats& stats);

} // namespace hkan
