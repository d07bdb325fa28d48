#include "hkan/search.hpp"

#include "hkan/errors.hpp"
#include "hkan/evaluation.hpp"
#include "hkan/model_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace hkan {

void validate(const SearchSpace& space) {
    if (space.layer_counts.empty()) throw InvalidInput("search space lists no layer counts");
    for (int L : space.layer_counts)
        if (L < 1) throw InvalidInput("layer counts must be at least 1");
    if (space.width_min < 1 || space.width_min > space.width_max ||
        space.width_max_deep < space.width_min)
        throw InvalidInput("search space width bounds are inconsistent");
    if (space.hidden_kinds.empty() || space.output_kinds.empty())
        throw InvalidInput("search space lists no basis function kinds");
    for (BafKind kind : space.hidden_kinds)
        if (output_layer_only(kind))
            throw InvalidInput(to_string(kind) + " is not a hidden-layer basis function kind");
    if (space.sigma_min < 1 || space.sigma_min > space.sigma_max)
        throw InvalidInput("search space sigma bounds are inconsistent");
    if (space.m_min < 1 || space.m_min > space.m_max)
        throw InvalidInput("search space m bounds are inconsistent");
    if (space.hidden_placements.empty() || space.output_placements.empty())
        throw InvalidInput("search space lists no placement strategies");
    for (Placement placement : space.hidden_placements)
        if (output_layer_only(placement))
            throw InvalidInput(to_string(placement) + " is not a hidden-layer placement");
    if (space.lambda_phi_grid.empty()) throw InvalidInput("search space lists no lambda values");
    for (double lambda : space.lambda_phi_grid)
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw InvalidInput("lambda grid values must be finite and non-negative");
}

namespace {

int draw_int(RngStream& rng, int lo, int hi) {
    return lo + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(hi - lo) + 1));
}

template <typename T>
const T& draw_from(RngStream& rng, const std::vector<T>& options) {
    return options[rng.uniform_index(options.size())];
}

} // namespace

HkanConfig sample_config(const SearchSpace& space, RngStream& rng) {
    HkanConfig cfg;
    const int L = draw_from(rng, space.layer_counts);
    const int width_cap = L >= 3 ? std::min(space.width_max, space.width_max_deep)
                                 : space.width_max;

    for (int l = 0; l + 1 < L; ++l) {
        LayerConfig layer;
        layer.n_out = draw_int(rng, space.width_min, width_cap);
        layer.kind = draw_from(rng, space.hidden_kinds);
        layer.sigma = static_cast<double>(draw_int(rng, space.sigma_min, space.sigma_max));
        layer.m = draw_int(rng, space.m_min, space.m_max);
        layer.placement = draw_from(rng, space.hidden_placements);
        layer.lambda_phi = draw_from(rng, space.lambda_phi_grid);
        cfg.hidden_layers.push_back(layer);
    }

    LayerConfig output;
    output.n_out = 1;
    output.m = 1;
    output.kind = draw_from(rng, space.output_kinds);
    if (output.kind == BafKind::Identity) {
        output.sigma = 1.0;
        output.placement = Placement::DataDriven;
        output.lambda_phi = 0.0;
    } else {
        output.sigma = static_cast<double>(draw_int(rng, space.sigma_min, space.sigma_max));
        output.placement = draw_from(rng, space.output_placements);
        output.lambda_phi = draw_from(rng, space.lambda_phi_grid);
    }
    cfg.output_layer = output;
    cfg.seed = rng.next_bits();
    return cfg;
}

SearchResult random_search(const SearchSpace& space, const Dataset& ds, int trials, int k,
                           std::uint64_t seed) {
    validate(space);
    if (trials < 1) throw InvalidInput("need at least one trial");

    const double baseline =
        std::sqrt((ds.y.array() - ds.y.mean()).square().sum() / static_cast<double>(ds.rows()));
    const std::vector<int> fold = fold_assignment(ds.rows(), k, seed);

    RngStream rng(seed);
    SearchResult result;
    result.log.reserve(static_cast<std::size_t>(trials));

    for (int t = 0; t < trials; ++t) {
        TrialRecord record;
        record.trial = t;
        record.config = sample_config(space, rng);

        const auto start = std::chrono::steady_clock::now();
        try {
            double sum = 0.0;
            record.status = TrialRecord::Status::Completed;
            for (int f = 0; f < k; ++f) {
                const Dataset train = select_fold(ds, fold, f, false);
                const Dataset val = select_fold(ds, fold, f, true);
                const HkanModel model = train_model(train, record.config);
                const double score = rmse(val.y, predict(model, val.X));
                if (f == 0 && score > 2.0 * baseline) {
                    record.status = TrialRecord::Status::Pruned;
                    record.cv_rmse = score;
                    break;
                }
                sum += score;
            }
            if (record.status == TrialRecord::Status::Completed)
                record.cv_rmse = sum / static_cast<double>(k);
        } catch (const std::exception& e) {
            record.status = TrialRecord::Status::Failed;
            record.error = e.what();
        }
        record.wall_time_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();

        if (record.status == TrialRecord::Status::Completed &&
            (result.best_trial < 0 || record.cv_rmse < result.best_rmse)) {
            result.best = record.config;
            result.best_rmse = record.cv_rmse;
            result.best_trial = t;
        }
        result.log.push_back(std::move(record));
    }
    return result;
}

nlohmann::ordered_json trial_record_to_json(const TrialRecord& record) {
    nlohmann::ordered_json j;
    j["trial"] = record.trial;
    switch (record.status) {
    case TrialRecord::Status::Completed: j["status"] = "completed"; break;
    case TrialRecord::Status::Pruned: j["status"] = "pruned"; break;
    case TrialRecord::Status::Failed: j["status"] = "failed"; break;
    }
    if (std::isnan(record.cv_rmse))
        j["cv_rmse"] = nullptr;
    else
        j["cv_rmse"] = record.cv_rmse;
    j["wall_time_ms"] = record.wall_time_ms;
    if (!record.error.empty()) j["error"] = record.error;
    j["config"] = config_to_json(record.config);
    return j;
}

namespace {

std::vector<BafKind> kinds_from_json(const nlohmann::ordered_json& j) {
    std::vector<BafKind> kinds;
    for (const auto& name : j) kinds.push_back(baf_kind_from_string(name.get<std::string>()));
    return kinds;
}

std::vector<Placement> placements_from_json(const nlohmann::ordered_json& j) {
    std::vector<Placement> placements;
    for (const auto& name : j)
        placements.push_back(placement_from_string(name.get<std::string>()));
    return placements;
}

} // namespace

SearchSpace search_space_from_json(const nlohmann::ordered_json& j) {
    SearchSpace space;
    if (j.contains("layer_counts")) space.layer_counts = j.at("layer_counts").get<std::vector<int>>();
    if (j.contains("width_min")) space.width_min = j.at("width_min").get<int>();
    if (j.contains("width_max")) space.width_max = j.at("width_max").get<int>();
    if (j.contains("width_max_deep")) space.width_max_deep = j.at("width_max_deep").get<int>();
    if (j.contains("hidden_kinds")) space.hidden_kinds = kinds_from_json(j.at("hidden_kinds"));
    if (j.contains("output_kinds")) space.output_kinds = kinds_from_json(j.at("output_kinds"));
    if (j.contains("sigma_min")) space.sigma_min = j.at("sigma_min").get<int>();
    if (j.contains("sigma_max")) space.sigma_max = j.at("sigma_max").get<int>();
    if (j.contains("m_min")) space.m_min = j.at("m_min").get<int>();
    if (j.contains("m_max")) space.m_max = j.at("m_max").get<int>();
    if (j.contains("hidden_placements"))
        space.hidden_placements = placements_from_json(j.at("hidden_placements"));
    if (j.contains("output_placements"))
        space.output_placements = placements_from_json(j.at("output_placements"));
    if (j.contains("lambda_phi_grid"))
        space.lambda_phi_grid = j.at("lambda_phi_grid").get<std::vector<double>>();
    return space;
}

nlohmann::ordered_json search_space_to_json(const SearchSpace& space) {
    nlohmann::ordered_json j;
    j["layer_counts"] = space.layer_counts;
    j["width_min"] = space.width_min;
    j["width_max"] = space.width_max;
    j["width_max_deep"] = space.width_max_deep;
    nlohmann::ordered_json hidden_kinds = nlohmann::ordered_json::array();
    for (BafKind kind : space.hidden_kinds) hidden_kinds.push_back(to_string(kind));
    j["hidden_kinds"] = std::move(hidden_kinds);
    nlohmann::ordered_json output_kinds = nlohmann::ordered_json::array();
    for (BafKind kind : space.output_kinds) output_kinds.push_back(to_string(kind));
    j["output_kinds"] = std::move(output_kinds);
    j["sigma_min"] = space.sigma_min;
    j["sigma_max"] = space.sigma_max;
    j["m_min"] = space.m_min;
    j["m_max"] = space.m_max;
    nlohmann::ordered_json hidden_placements = nlohmann::ordered_json::array();
    for (Placement placement : space.hidden_placements)
        hidden_placements.push_back(to_string(placement));
    j["hidden_placements"] = std::move(hidden_placements);
    nlohmann::ordered_json output_placements = nlohmann::ordered_json::array();
    for (Placement placement : space.output_placements)
        output_placements.push_back(to_string(placement));
    j["output_placements"] = std::move(output_placements);
    j["lambda_phi_grid"] = space.lambda_phi_grid;
    return j;
}

} // namespace hkan
