#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "jamsurv/scenario.hpp"

namespace jamsurv {

/// Contents of a scenario file. Powers are given in dB there and converted
/// to linear on load.
struct ScenarioFile {
    ScenarioParams params;
    std::optional<Placement> placement;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
};

/// Parses a scenario object. Unknown keys, wrong types and invalid values are
/// reported as ConfigError. Missing keys keep the ScenarioParams defaults.
ScenarioFile parse_scenario(const nlohmann::json& doc);
ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Inverse of parse_scenario (powers written back in dB).
nlohmann::json scenario_to_json(const ScenarioFile& file);

}  // namespace jamsurv
