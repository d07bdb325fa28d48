#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hkan/basis.hpp"

namespace hkan {

// A fitted block function: a least-squares combination of m basis functions
// over a single input column, trained against the target directly.
struct Block {
    int input_index = 0;
    std::vector<BafParams> bafs;
    Eigen::VectorXd weights;
    double train_r2 = 0.0; // 1 - SSE/SST on the training target; 0 when SST = 0
};

// Response matrix: entry (i, r) = g_r(column[i]). Dimensions N x m.
Eigen::MatrixXd build_design_matrix(const std::vector<BafParams>& bafs,
                                    const Eigen::VectorXd& column);

// Fits the block weights by ridge regression (lambda_phi = 0 routes to the
// minimum-norm pseudoinverse path) and records the training R^2.
Block fit_block(int input_index, std::vector<BafParams> bafs, const Eigen::VectorXd& column,
                const Eigen::VectorXd& y, double lambda_phi);

// Scalar evaluation: sum_r c_r g_r(z).
double eval_block(const Block& b, double z);

// Vector evaluation over a whole column; the shared forward path for both
// training-time layer outputs and prediction.
Eigen::VectorXd block_response(const Block& b, const Eigen::VectorXd& column);

} // namespace hkan
