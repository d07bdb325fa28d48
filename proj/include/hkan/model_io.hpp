#pragma once

#include <string>

#include <json.hpp>

#include "hkan/network.hpp"

namespace hkan {

using ordered_json = nlohmann::ordered_json;

// Versioned model document. Doubles round-trip exactly.
ordered_json model_to_json(const HkanModel& model);
HkanModel model_from_json(const ordered_json& j);
void save_model(const HkanModel& model, const std::string& path);
HkanModel load_model(const std::string& path);

// Architecture config document, shared between `search` output and `train`
// input.
ordered_json config_to_json(const HkanConfig& cfg);
HkanConfig config_from_json(const ordered_json& j);
void save_config(const HkanConfig& cfg, const std::string& path);
HkanConfig load_config(const std::string& path);

ordered_json layer_config_to_json(const LayerConfig& cfg);
LayerConfig layer_config_from_json(const ordered_json& j);

} // namespace hkan
