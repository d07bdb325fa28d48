#include "hkan/basis.hpp"

#include "hkan/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hkan {

double eval_baf(const BafParams& p, double z) {
    const double a = p.sigma * (z - p.mu);
    switch (p.kind) {
    case BafKind::Gaussian: return std::exp(-a * a);
    case BafKind::Sigmoid: return 1.0 / (1.0 + std::exp(-a));
    case BafKind::Relu: return a > 0.0 ? a : 0.0;
    case BafKind::Softplus: return std::max(a, 0.0) + std::log1p(std::exp(-std::abs(a)));
    case BafKind::Tanh: return std::tanh(a);
    case BafKind::Identity: return z;
    }
    throw InvalidInput("unknown basis function kind");
}

bool output_layer_only(BafKind kind) { return kind == BafKind::Identity; }
bool output_layer_only(Placement placement) { return placement == Placement::EquallySpaced; }

namespace {

std::pair<double, double> location_range(const Eigen::VectorXd& column) {
    if (column.size() == 0) throw EmptyDataset("cannot derive a location range from an empty column");
    if (!column.allFinite()) throw InvalidInput("column contains non-finite values");
    double lo = column.minCoeff();
    double hi = column.maxCoeff();
    if (lo >= 0.0 && hi <= 1.0) {
        lo = 0.0;
        hi = 1.0;
    }
    return {lo, hi};
}

} // namespace

std::vector<double> generate_locations(Placement placement, int m, const Eigen::VectorXd& column,
                                       RngStream& rng) {
    if (m <= 0) throw InvalidInput("number of basis functions must be positive");
    std::vector<double> mus(static_cast<std::size_t>(m));
    switch (placement) {
    case Placement::RandomUniform: {
        const auto [lo, hi] = location_range(column);
        for (auto& mu : mus) mu = rng.uniform(lo, hi);
        break;
    }
    case Placement::DataDriven: {
        if (column.size() == 0) throw EmptyDataset("data-driven placement needs support points");
        for (auto& mu : mus) mu = column(static_cast<Eigen::Index>(rng.uniform_index(
            static_cast<std::size_t>(column.size()))));
        break;
    }
    case Placement::EquallySpaced: {
        const auto [lo, hi] = location_range(column);
        const double step = (hi - lo) / static_cast<double>(m);
        for (int i = 0; i < m; ++i) mus[static_cast<std::size_t>(i)] = lo + (i + 0.5) * step;
        break;
    }
    }
    return mus;
}

std::string to_string(BafKind kind) {
    switch (kind) {
    case BafKind::Gaussian: return "gaussian";
    case BafKind::Sigmoid: return "sigmoid";
    case BafKind::Relu: return "relu";
    case BafKind::Softplus: return "softplus";
    case BafKind::Tanh: return "tanh";
    case BafKind::Identity: return "identity";
    }
    throw InvalidInput("unknown basis function kind");
}

std::string to_string(Placement placement) {
    switch (placement) {
    case Placement::RandomUniform: return "random";
    case Placement::DataDriven: return "data";
    case Placement::EquallySpaced: return "equal";
    }
    throw InvalidInput("unknown placement strategy");
}

BafKind baf_kind_from_string(const std::string& name) {
    if (name == "gaussian") return BafKind::Gaussian;
    if (name == "sigmoid") return BafKind::Sigmoid;
    if (name == "relu") return BafKind::Relu;
    if (name == "softplus") return BafKind::Softplus;
    if (name == "tanh") return BafKind::Tanh;
    if (name == "identity") return BafKind::Identity;
    throw ParseError("unknown basis function kind: " + name);
}

Placement placement_from_string(const std::string& name) {
    if (name == "random") return Placement::RandomUniform;
    if (name == "data") return Placement::DataDriven;
    if (name == "equal") return Placement::EquallySpaced;
    throw ParseError("unknown placement strategy: " + name);
}

} // namespace hkan
