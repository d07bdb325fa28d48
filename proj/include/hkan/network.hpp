#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hkan/blocks.hpp"
#include "hkan/datasets.hpp"

namespace hkan {

// Hyperparameters of one layer. sigma and lambda_phi are shared by every
// block in the layer; lambda_h regularizes the per-node combination weights.
struct LayerConfig {
    int n_out = 1;
    int m = 1;
    BafKind kind = BafKind::Sigmoid;
    double sigma = 1.0;
    Placement placement = Placement::DataDriven;
    double lambda_phi = 0.0;
    double lambda_h = 0.0;
};

// One node: one fitted block per input column plus the weights that combine
// the block responses into the node output.
struct NodeModel {
    std::vector<Block> blocks;
    Eigen::VectorXd h_weights;
};

struct Layer {
    LayerConfig config;
    std::vector<NodeModel> nodes;
};

// Full architecture: zero or more hidden layers followed by an output layer
// with a single node and one basis function per block.
struct HkanConfig {
    std::vector<LayerConfig> hidden_layers;
    LayerConfig output_layer;
    std::uint64_t seed = 0;

    int depth() const { return static_cast<int>(hidden_layers.size()) + 1; }
};

// Checks the structural rules: output-layer-only kinds/placements stay out of
// hidden layers, widths and counts are positive, sigma > 0 for parametric
// kinds, regularization is non-negative. Throws InvalidInput.
void validate(const HkanConfig& cfg);

// A trained model. Immutable after fitting; safe for concurrent prediction.
struct HkanModel {
    std::vector<Layer> layers;
    int input_dim = 0;
    NormStats normalization;
    HkanConfig config;
    std::uint64_t seed = 0;
};

// Least-squares weights combining block responses into a node output.
// lambda_h = 0 gives the minimum-norm solution.
Eigen::VectorXd fit_h(const Eigen::MatrixXd& block_responses, const Eigen::VectorXd& y,
                      double lambda_h);

// Supplies the seed for the (node, input) block fit of one layer.
using StreamSeeder = std::function<std::uint64_t(int node, int input)>;

// Fits one layer against the target and returns it together with its training
// outputs (one column per node), which feed the next layer.
std::pair<Layer, Eigen::MatrixXd> fit_layer(const Eigen::MatrixXd& Z_in, const Eigen::VectorXd& y,
                                            const LayerConfig& cfg, const StreamSeeder& seeder);

// Forward pass of one fitted layer over a batch.
Eigen::MatrixXd eval_layer(const Layer& layer, const Eigen::MatrixXd& Z_in);

// Trains the full hierarchy on data already normalized with `stats`; the
// stats are stored in the model so prediction is self-contained.
HkanModel fit_hkan(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const HkanConfig& cfg,
                   const NormStats& stats);

// Convenience entry point: fits normalization on `train`, normalizes, and
// trains.
HkanModel train_model(const Dataset& train, const HkanConfig& cfg);

// Applies the stored normalization (without clamping), runs the cascade, and
// de-normalizes the output back to original target units.
Eigen::VectorXd predict(const HkanModel& model, const Eigen::MatrixXd& X_raw);

// Mean training R^2 of the first-layer blocks attached to each input.
Eigen::VectorXd input_importance(const HkanModel& model);

} // namespace hkan
