#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hkan/rng.hpp"

namespace hkan {

// Univariate basis function families. All except Identity are applied to the
// affine argument sigma * (z - mu). Identity passes z through and is legal
// only in the output layer.
enum class BafKind { Gaussian, Sigmoid, Relu, Softplus, Tanh, Identity };

// How the location parameters mu are placed over a block's input range.
// EquallySpaced is legal only in the output layer.
enum class Placement { RandomUniform, DataDriven, EquallySpaced };

// One fixed-parameter basis function g(z; mu, sigma).
struct BafParams {
    BafKind kind = BafKind::Sigmoid;
    double mu = 0.0;
    double sigma = 1.0; // > 0 for every kind except Identity, which ignores both
};

double eval_baf(const BafParams& p, double z);

// Draws m location parameters for one block over `column`, the block's
// training-time input. RandomUniform and EquallySpaced operate on the
// observed [min, max] of the column, widened to [0, 1] whenever the column
// already lies inside the unit interval; DataDriven samples column values
// with replacement (support points).
std::vector<double> generate_locations(Placement strategy, int m, const Eigen::VectorXd& column,
                                       RngStream& rng);

bool output_layer_only(BafKind kind);
bool output_layer_only(Placement placement);

// Wire names used in config and model files.
std::string to_string(BafKind kind);
std::string to_string(Placement placement);
BafKind baf_kind_from_string(const std::string& name);
Placement placement_from_string(const std::string& name);

} // namespace hkan
