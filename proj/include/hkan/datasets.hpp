#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hkan {

// An in-memory regression table: rows are samples, X columns are inputs.
struct Dataset {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    std::vector<std::string> column_names; // names of the X columns
    std::string source;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index cols() const { return X.cols(); }
};

// Min-max statistics fitted on a training split. Degenerate columns
// (max == min) map to the constant 0.
struct NormStats {
    Eigen::VectorXd x_min;
    Eigen::VectorXd x_max;
    double y_min = 0.0;
    double y_max = 1.0;

    double norm_y(double v) const;
    double denorm_y(double v) const;
};

// Loads a numeric CSV with a one-line header. `target` selects the target
// column by name; empty string means the last column. Rejects ragged rows,
// non-numeric or non-finite cells (naming the row), and tables with fewer
// than two columns.
Dataset load_csv(const std::string& path, const std::string& target = "");

// Writes X columns followed by the target column "y" (or the stored names)
// with full round-trip precision.
void save_csv(const Dataset& ds, const std::string& path);

NormStats fit_normalization(const Dataset& train);
Dataset apply_normalization(const Dataset& ds, const NormStats& stats);

// Column-wise input normalization without clamping; out-of-range values map
// outside [0, 1].
Eigen::MatrixXd normalize_inputs(const Eigen::MatrixXd& X, const NormStats& stats);

// Seeded uniform shuffle followed by a split into disjoint, exhaustive parts.
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, std::uint64_t seed);

// The built-in synthetic target functions.
enum class TargetFn { TF1, TF2, TF3, TF4, TF5, TF5_5 };

std::string to_string(TargetFn fn);
TargetFn target_fn_from_string(const std::string& name);

// Raw (un-normalized, noise-free) target value at one input point.
double tf_raw(TargetFn fn, const Eigen::RowVectorXd& x);

// Generates train/test samples with inputs i.i.d. uniform over the target
// function's native domain. TF3, TF4 and TF5 inputs and outputs are min-max
// normalized to [0, 1] using the combined generated sample; TF2 training
// targets are perturbed by additive U(-0.2, 0.2) noise while test targets
// stay clean.
std::pair<Dataset, Dataset> gen_tf(TargetFn fn, int n_train, int n_test, std::uint64_t seed);

} // namespace hkan
