#include "hkan/linsolve.hpp"

#include "hkan/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace hkan {

namespace {

void check_system(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) {
    if (A.rows() == 0 || A.cols() == 0) throw InvalidInput("linear system has no rows or columns");
    if (A.rows() != y.size())
        throw DimensionMismatch("design matrix rows do not match target length");
    if (!A.allFinite() || !y.allFinite())
        throw InvalidInput("linear system contains non-finite values");
}

double residual_sse(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& w) {
    return (A * w - y).squaredNorm();
}

} // namespace

SolveReport solve_least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) {
    check_system(A, y);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double eps = std::numeric_limits<double>::epsilon();
    svd.setThreshold(static_cast<double>(std::max(A.rows(), A.cols())) * eps);

    SolveReport report;
    report.solution = svd.solve(y);
    report.effective_rank = svd.rank();
    report.residual_sse = residual_sse(A, y, report.solution);
    if (!report.solution.allFinite()) throw InvalidInput("least-squares solve produced non-finite weights");
    return report;
}

SolveReport solve_ridge(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double lambda) {
    check_system(A, y);
    if (!(lambda >= 0.0)) throw InvalidInput("ridge penalty must be non-negative");
    if (lambda == 0.0) return solve_least_squares(A, y);

    const Eigen::Index m = A.cols();
    Eigen::MatrixXd gram = A.transpose() * A;
    gram.diagonal().array() += lambda;

    SolveReport report;
    report.solution = gram.ldlt().solve(A.transpose() * y);
    report.effective_rank = m;
    report.residual_sse = residual_sse(A, y, report.solution);
    if (!report.solution.allFinite()) throw InvalidInput("ridge solve produced non-finite weights");
    return report;
}

} // namespace hkan
