#include "hkan/evaluation.hpp"

#include "hkan/errors.hpp"
#include "hkan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hkan {

double rmse(const Eigen::VectorXd& y, const Eigen::VectorXd& y_hat) {
    if (y.size() != y_hat.size()) throw DimensionMismatch("rmse: length mismatch");
    if (y.size() == 0) throw InvalidInput("rmse: empty vectors");
    return std::sqrt((y - y_hat).squaredNorm() / static_cast<double>(y.size()));
}

double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& y_hat) {
    if (y.size() != y_hat.size()) throw DimensionMismatch("r_squared: length mismatch");
    if (y.size() == 0) throw InvalidInput("r_squared: empty vectors");
    const double sst = (y.array() - y.mean()).square().sum();
    if (sst == 0.0) return 0.0;
    return 1.0 - (y - y_hat).squaredNorm() / sst;
}

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw InvalidInput("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::vector<int> fold_assignment(Eigen::Index n, int k, std::uint64_t seed) {
    if (k < 2) throw InvalidInput("need at least 2 folds");
    if (static_cast<Eigen::Index>(k) > n) throw InvalidInput("more folds than rows");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    RngStream rng(seed);
    for (std::size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_index(i + 1)]);

    std::vector<int> fold(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < order.size(); ++i)
        fold[static_cast<std::size_t>(order[i])] = static_cast<int>(i % static_cast<std::size_t>(k));
    return fold;
}

Dataset select_fold(const Dataset& ds, const std::vector<int>& fold, int f, bool in_fold) {
    Eigen::Index count = 0;
    for (int assignment : fold)
        if ((assignment == f) == in_fold) ++count;

    Dataset part;
    part.column_names = ds.column_names;
    part.source = ds.source;
    part.X.resize(count, ds.cols());
    part.y.resize(count);
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < fold.size(); ++i) {
        if ((fold[i] == f) != in_fold) continue;
        part.X.row(row) = ds.X.row(static_cast<Eigen::Index>(i));
        part.y(row) = ds.y(static_cast<Eigen::Index>(i));
        ++row;
    }
    return part;
}

std::vector<double> kfold_rmses(const HkanConfig& cfg, const Dataset& ds, int k,
                                std::uint64_t seed) {
    const std::vector<int> fold = fold_assignment(ds.rows(), k, seed);
    std::vector<double> scores(static_cast<std::size_t>(k));
    for (int f = 0; f < k; ++f) {
        const Dataset train = select_fold(ds, fold, f, false);
        const Dataset val = select_fold(ds, fold, f, true);
        const HkanModel model = train_model(train, cfg);
        scores[static_cast<std::size_t>(f)] = rmse(val.y, predict(model, val.X));
    }
    return scores;
}

double kfold_cv(const HkanConfig& cfg, const Dataset& ds, int k, std::uint64_t seed) {
    const std::vector<double> scores = kfold_rmses(cfg, ds, k, seed);
    return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
}

RunStats repeated_runs(const HkanConfig& cfg, const Dataset& train, const Dataset& test,
                       int runs) {
    if (runs < 1) throw InvalidInput("need at least one run");
    RunStats stats;
    stats.per_run_rmse.resize(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
        HkanConfig run_cfg = cfg;
        run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(i);
        const HkanModel model = train_model(train, run_cfg);
        stats.per_run_rmse[static_cast<std::size_t>(i)] = rmse(test.y, predict(model, test.X));
    }
    stats.median = quantile(stats.per_run_rmse, 0.5);
    stats.iqr = quantile(stats.per_run_rmse, 0.75) - quantile(stats.per_run_rmse, 0.25);
    return stats;
}

nlohmann::ordered_json run_stats_to_json(const RunStats& stats) {
    nlohmann::ordered_json j;
    j["median_rmse"] = stats.median;
    j["iqr"] = stats.iqr;
    j["runs"] = stats.per_run_rmse.size();
    j["per_run_rmse"] = stats.per_run_rmse;
    return j;
}

} // namespace hkan
