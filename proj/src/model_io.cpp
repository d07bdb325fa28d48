#include "hkan/model_io.hpp"

#include "hkan/errors.hpp"

#include <fstream>

namespace hkan {

namespace {

constexpr int kFormatVersion = 1;

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ordered_json block_to_json(const Block& b) {
    ordered_json j;
    j["input_index"] = b.input_index;
    j["kind"] = to_string(b.bafs.empty() ? BafKind::Identity : b.bafs.front().kind);
    ordered_json mus = ordered_json::array();
    for (const BafParams& p : b.bafs) mus.push_back(p.mu);
    j["mu"] = std::move(mus);
    j["sigma"] = b.bafs.empty() ? 1.0 : b.bafs.front().sigma;
    j["c"] = to_std(b.weights);
    j["train_r2"] = b.train_r2;
    return j;
}

Block block_from_json(const ordered_json& j) {
    Block b;
    b.input_index = j.at("input_index").get<int>();
    const BafKind kind = baf_kind_from_string(j.at("kind").get<std::string>());
    const double sigma = j.at("sigma").get<double>();
    for (const auto& mu : j.at("mu")) b.bafs.push_back(BafParams{kind, mu.get<double>(), sigma});
    b.weights = to_eigen(j.at("c").get<std::vector<double>>());
    b.train_r2 = j.at("train_r2").get<double>();
    if (b.bafs.size() != static_cast<std::size_t>(b.weights.size()))
        throw ParseError("block 'mu' and 'c' arrays differ in length");
    return b;
}

ordered_json node_to_json(const NodeModel& node) {
    ordered_json j;
    ordered_json blocks = ordered_json::array();
    for (const Block& b : node.blocks) blocks.push_back(block_to_json(b));
    j["blocks"] = std::move(blocks);
    j["h_weights"] = to_std(node.h_weights);
    return j;
}

NodeModel node_from_json(const ordered_json& j) {
    NodeModel node;
    for (const auto& b : j.at("blocks")) node.blocks.push_back(block_from_json(b));
    node.h_weights = to_eigen(j.at("h_weights").get<std::vector<double>>());
    if (node.blocks.size() != static_cast<std::size_t>(node.h_weights.size()))
        throw ParseError("node block count and 'h_weights' length disagree");
    return node;
}

} // namespace

ordered_json layer_config_to_json(const LayerConfig& cfg) {
    ordered_json j;
    j["n_out"] = cfg.n_out;
    j["m"] = cfg.m;
    j["kind"] = to_string(cfg.kind);
    j["sigma"] = cfg.sigma;
    j["placement"] = to_string(cfg.placement);
    j["lambda_phi"] = cfg.lambda_phi;
    j["lambda_h"] = cfg.lambda_h;
    return j;
}

LayerConfig layer_config_from_json(const ordered_json& j) {
    LayerConfig cfg;
    cfg.n_out = j.value("n_out", 1);
    cfg.m = j.value("m", 1);
    cfg.kind = baf_kind_from_string(j.value("kind", std::string("sigmoid")));
    cfg.sigma = j.value("sigma", 1.0);
    cfg.placement = placement_from_string(j.value("placement", std::string("data")));
    cfg.lambda_phi = j.value("lambda_phi", 0.0);
    cfg.lambda_h = j.value("lambda_h", 0.0);
    return cfg;
}

ordered_json config_to_json(const HkanConfig& cfg) {
    ordered_json j;
    ordered_json hidden = ordered_json::array();
    for (const LayerConfig& layer : cfg.hidden_layers) hidden.push_back(layer_config_to_json(layer));
    j["hidden_layers"] = std::move(hidden);
    j["output_layer"] = layer_config_to_json(cfg.output_layer);
    j["seed"] = cfg.seed;
    return j;
}

HkanConfig config_from_json(const ordered_json& j) {
    HkanConfig cfg;
    if (j.contains("hidden_layers"))
        for (const auto& layer : j.at("hidden_layers"))
            cfg.hidden_layers.push_back(layer_config_from_json(layer));
    cfg.output_layer = layer_config_from_json(j.at("output_layer"));
    cfg.seed = j.value("seed", std::uint64_t{0});
    return cfg;
}

ordered_json model_to_json(const HkanModel& model) {
    ordered_json j;
    j["format_version"] = kFormatVersion;
    j["seed"] = model.seed;
    j["input_dim"] = model.input_dim;
    ordered_json norm;
    norm["x_min"] = to_std(model.normalization.x_min);
    norm["x_max"] = to_std(model.normalization.x_max);
    norm["y_min"] = model.normalization.y_min;
    norm["y_max"] = model.normalization.y_max;
    j["normalization"] = std::move(norm);
    ordered_json layers = ordered_json::array();
    for (const Layer& layer : model.layers) {
        ordered_json lj;
        lj["config"] = layer_config_to_json(layer.config);
        ordered_json nodes = ordered_json::array();
        for (const NodeModel& node : layer.nodes) nodes.push_back(node_to_json(node));
        lj["nodes"] = std::move(nodes);
        layers.push_back(std::move(lj));
    }
    j["layers"] = std::move(layers);
    return j;
}

HkanModel model_from_json(const ordered_json& j) {
    const int version = j.at("format_version").get<int>();
    if (version != kFormatVersion)
        throw ParseError("unsupported model format version " + std::to_string(version));

    HkanModel model;
    model.seed = j.at("seed").get<std::uint64_t>();
    model.input_dim = j.at("input_dim").get<int>();
    const auto& norm = j.at("normalization");
    model.normalization.x_min = to_eigen(norm.at("x_min").get<std::vector<double>>());
    model.normalization.x_max = to_eigen(norm.at("x_max").get<std::vector<double>>());
    model.normalization.y_min = norm.at("y_min").get<double>();
    model.normalization.y_max = norm.at("y_max").get<double>();

    for (const auto& lj : j.at("layers")) {
        Layer layer;
        layer.config = layer_config_from_json(lj.at("config"));
        for (const auto& nj : lj.at("nodes")) layer.nodes.push_back(node_from_json(nj));
        model.layers.push_back(std::move(layer));
    }
    if (model.layers.empty()) throw ParseError("model has no layers");

    model.config.seed = model.seed;
    model.config.output_layer = model.layers.back().config;
    for (std::size_t l = 0; l + 1 < model.layers.size(); ++l)
        model.config.hidden_layers.push_back(model.layers[l].config);
    return model;
}

void save_model(const HkanModel& model, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("cannot write " + path);
    file << model_to_json(model).dump(2) << '\n';
    if (!file) throw DataError("write to " + path + " failed");
}

HkanModel load_model(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DataError("cannot open " + path);
    ordered_json j;
    try {
        file >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return model_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_config(const HkanConfig& cfg, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("cannot write " + path);
    file << config_to_json(cfg).dump(2) << '\n';
    if (!file) throw DataError("write to " + path + " failed");
}

HkanConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DataError("cannot open " + path);
    ordered_json j;
    try {
        file >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace hkan
