#include "hkan/blocks.hpp"

#include "hkan/errors.hpp"
#include "hkan/linsolve.hpp"

#include <utility>

namespace hkan {

Eigen::MatrixXd build_design_matrix(const std::vector<BafParams>& bafs,
                                    const Eigen::VectorXd& column) {
    if (bafs.empty()) throw InvalidInput("a block needs at least one basis function");
    Eigen::MatrixXd G(column.size(), static_cast<Eigen::Index>(bafs.size()));
    for (Eigen::Index r = 0; r < G.cols(); ++r) {
        const BafParams& p = bafs[static_cast<std::size_t>(r)];
        for (Eigen::Index i = 0; i < G.rows(); ++i) G(i, r) = eval_baf(p, column(i));
    }
    return G;
}

Block fit_block(int input_index, std::vector<BafParams> bafs, const Eigen::VectorXd& column,
                const Eigen::VectorXd& y, double lambda_phi) {
    if (column.size() != y.size())
        throw DimensionMismatch("block input column and target differ in length");
    Block b;
    b.input_index = input_index;
    b.bafs = std::move(bafs);

    const Eigen::MatrixXd G = build_design_matrix(b.bafs, column);
    const SolveReport report = solve_ridge(G, y, lambda_phi);
    b.weights = report.solution;

    const double sst = (y.array() - y.mean()).square().sum();
    b.train_r2 = sst > 0.0 ? 1.0 - report.residual_sse / sst : 0.0;
    return b;
}

double eval_block(const Block& b, double z) {
    double acc = 0.0;
    for (Eigen::Index r = 0; r < b.weights.size(); ++r)
        acc += b.weights(r) * eval_baf(b.bafs[static_cast<std::size_t>(r)], z);
    return acc;
}

Eigen::VectorXd block_response(const Block& b, const Eigen::VectorXd& column) {
    if (static_cast<std::size_t>(b.weights.size()) != b.bafs.size())
        throw InvalidInput("block weights and basis functions differ in length");
    return build_design_matrix(b.bafs, column) * b.weights;
}

} // namespace hkan
