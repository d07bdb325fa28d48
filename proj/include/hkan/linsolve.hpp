#pragma once

#include <Eigen/Dense>

namespace hkan {

// Result of a dense least-squares or ridge solve. residual_sse is recomputed
// from the returned solution, never taken on faith from the factorization.
struct SolveReport {
    Eigen::VectorXd solution;
    Eigen::Index effective_rank = 0;
    double residual_sse = 0.0;
};

// Minimum-norm least-squares solution of A x ~= y (rows of A are samples).
// Rank deficiency is handled by a singular-value decomposition with the
// relative cutoff max(N, m) * eps * sigma_max.
SolveReport solve_least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y);

// Exact minimizer of |A x - y|^2 + lambda |x|^2. lambda = 0 falls back to the
// minimum-norm path above; lambda > 0 solves the regularized normal equations,
// which are symmetric positive definite by construction.
SolveReport solve_ridge(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double lambda);

} // namespace hkan
