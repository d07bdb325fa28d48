#include "hkan/network.hpp"

#include "hkan/errors.hpp"
#include "hkan/linsolve.hpp"
#include "hkan/parallel.hpp"
#include "hkan/rng.hpp"

#include <cmath>
#include <string>

namespace hkan {

namespace {

void validate_layer(const LayerConfig& cfg, bool is_output, const std::string& where) {
    if (cfg.n_out < 1) throw InvalidInput(where + ": width must be at least 1");
    if (cfg.m < 1) throw InvalidInput(where + ": need at least one basis function per block");
    if (!is_output) {
        if (output_layer_only(cfg.kind))
            throw InvalidInput(where + ": " + to_string(cfg.kind) +
                               " basis functions are legal only in the output layer");
        if (output_layer_only(cfg.placement))
            throw InvalidInput(where + ": " + to_string(cfg.placement) +
                               " placement is legal only in the output layer");
    }
    if (cfg.kind != BafKind::Identity && !(cfg.sigma > 0.0))
        throw InvalidInput(where + ": sigma must be positive");
    if (!std::isfinite(cfg.sigma)) throw InvalidInput(where + ": sigma must be finite");
    if (!(cfg.lambda_phi >= 0.0) || !std::isfinite(cfg.lambda_phi))
        throw InvalidInput(where + ": lambda_phi must be finite and non-negative");
    if (!(cfg.lambda_h >= 0.0) || !std::isfinite(cfg.lambda_h))
        throw InvalidInput(where + ": lambda_h must be finite and non-negative");
}

// Block responses of one node over a batch, one column per input. The single
// forward path shared by training and prediction, so predict-on-train is
// bitwise identical to the training-time outputs.
Eigen::MatrixXd node_block_matrix(const NodeModel& node, const Eigen::MatrixXd& Z_in) {
    Eigen::MatrixXd phi(Z_in.rows(), Z_in.cols());
    for (Eigen::Index p = 0; p < Z_in.cols(); ++p)
        phi.col(p) = block_response(node.blocks[static_cast<std::size_t>(p)], Z_in.col(p));
    return phi;
}

} // namespace

void validate(const HkanConfig& cfg) {
    for (std::size_t l = 0; l < cfg.hidden_layers.size(); ++l)
        validate_layer(cfg.hidden_layers[l], false, "hidden layer " + std::to_string(l + 1));
    validate_layer(cfg.output_layer, true, "output layer");
    if (cfg.output_layer.n_out != 1) throw InvalidInput("output layer must have exactly one node");
    if (cfg.output_layer.m != 1)
        throw InvalidInput("output layer blocks carry exactly one basis function");
}

Eigen::VectorXd fit_h(const Eigen::MatrixXd& block_responses, const Eigen::VectorXd& y,
                      double lambda_h) {
    return solve_ridge(block_responses, y, lambda_h).solution;
}

std::pair<Layer, Eigen::MatrixXd> fit_layer(const Eigen::MatrixXd& Z_in, const Eigen::VectorXd& y,
                                            const LayerConfig& cfg, const StreamSeeder& seeder) {
    if (Z_in.rows() != y.size())
        throw DimensionMismatch("layer input rows do not match target length");
    if (Z_in.cols() < 1) throw InvalidInput("layer needs at least one input column");

    const bool identity = cfg.kind == BafKind::Identity;
    const int m = identity ? 1 : cfg.m;
    const double lambda_phi = identity ? 0.0 : cfg.lambda_phi;

    Layer layer;
    layer.config = cfg;
    layer.nodes.resize(static_cast<std::size_t>(cfg.n_out));
    Eigen::MatrixXd Z_out(Z_in.rows(), cfg.n_out);

    parallel_for(static_cast<std::size_t>(cfg.n_out), [&](std::size_t q) {
        NodeModel& node = layer.nodes[q];
        node.blocks.reserve(static_cast<std::size_t>(Z_in.cols()));
        for (Eigen::Index p = 0; p < Z_in.cols(); ++p) {
            std::vector<BafParams> bafs;
            if (identity) {
                bafs.push_back(BafParams{BafKind::Identity, 0.0, 1.0});
            } else {
                RngStream stream(seeder(static_cast<int>(q), static_cast<int>(p)));
                const std::vector<double> mus =
                    generate_locations(cfg.placement, m, Z_in.col(p), stream);
                bafs.reserve(mus.size());
                for (double mu : mus) bafs.push_back(BafParams{cfg.kind, mu, cfg.sigma});
            }
            node.blocks.push_back(
                fit_block(static_cast<int>(p), std::move(bafs), Z_in.col(p), y, lambda_phi));
        }
        const Eigen::MatrixXd phi = node_block_matrix(node, Z_in);
        node.h_weights = fit_h(phi, y, cfg.lambda_h);
        Z_out.col(static_cast<Eigen::Index>(q)) = phi * node.h_weights;
    });

    return {std::move(layer), std::move(Z_out)};
}

Eigen::MatrixXd eval_layer(const Layer& layer, const Eigen::MatrixXd& Z_in) {
    if (layer.nodes.empty()) throw InvalidInput("cannot evaluate an empty layer");
    if (Z_in.cols() != static_cast<Eigen::Index>(layer.nodes.front().blocks.size()))
        throw DimensionMismatch("layer input width does not match fitted block count");

    Eigen::MatrixXd Z_out(Z_in.rows(), static_cast<Eigen::Index>(layer.nodes.size()));
    parallel_for(layer.nodes.size(), [&](std::size_t q) {
        const NodeModel& node = layer.nodes[q];
        Z_out.col(static_cast<Eigen::Index>(q)) = node_block_matrix(node, Z_in) * node.h_weights;
    });
    return Z_out;
}

HkanModel fit_hkan(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const HkanConfig& cfg,
                   const NormStats& stats) {
    validate(cfg);
    if (X.rows() == 0 || X.cols() == 0) throw InvalidInput("training data is empty");
    if (X.rows() != y.size()) throw DimensionMismatch("input rows do not match target length");
    if (!X.allFinite() || !y.allFinite()) throw InvalidInput("training data contains non-finite values");

    HkanModel model;
    model.input_dim = static_cast<int>(X.cols());
    model.normalization = stats;
    model.config = cfg;
    model.seed = cfg.seed;
    model.layers.reserve(cfg.hidden_layers.size() + 1);

    Eigen::MatrixXd Z = X;
    for (std::size_t l = 0; l < cfg.hidden_layers.size(); ++l) {
        auto seeder = [&cfg, l](int node, int input) {
            return derive_seed(cfg.seed, static_cast<std::uint64_t>(l),
                               static_cast<std::uint64_t>(node),
                               static_cast<std::uint64_t>(input));
        };
        auto [layer, Z_next] = fit_layer(Z, y, cfg.hidden_layers[l], seeder);
        model.layers.push_back(std::move(layer));
        Z = std::move(Z_next);
    }

    const std::uint64_t output_index = cfg.hidden_layers.size();
    auto output_seeder = [&cfg, output_index](int node, int input) {
        return derive_seed(cfg.seed, output_index, static_cast<std::uint64_t>(node),
                           static_cast<std::uint64_t>(input));
    };
    auto [output, y_hat] = fit_layer(Z, y, cfg.output_layer, output_seeder);
    model.layers.push_back(std::move(output));
    return model;
}

HkanModel train_model(const Dataset& train, const HkanConfig& cfg) {
    const NormStats stats = fit_normalization(train);
    const Dataset normalized = apply_normalization(train, stats);
    return fit_hkan(normalized.X, normalized.y, cfg, stats);
}

Eigen::VectorXd predict(const HkanModel& model, const Eigen::MatrixXd& X_raw) {
    if (X_raw.cols() != model.input_dim)
        throw DimensionMismatch("expected " + std::to_string(model.input_dim) +
                                " input columns, got " + std::to_string(X_raw.cols()));
    if (model.layers.empty()) throw InvalidInput("model has no layers");

    Eigen::MatrixXd Z = normalize_inputs(X_raw, model.normalization);
    for (const Layer& layer : model.layers) Z = eval_layer(layer, Z);

    Eigen::VectorXd out(Z.rows());
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = model.normalization.denorm_y(Z(i, 0));
    return out;
}

Eigen::VectorXd input_importance(const HkanModel& model) {
    if (model.layers.empty()) throw InvalidInput("model has no layers");
    const Layer& first = model.layers.front();
    Eigen::VectorXd importance = Eigen::VectorXd::Zero(model.input_dim);
    for (const NodeModel& node : first.nodes)
        for (const Block& block : node.blocks)
            importance(block.input_index) += block.train_r2;
    importance /= static_cast<double>(first.nodes.size());
    return importance;
}

} // namespace hkan
