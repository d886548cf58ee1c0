#include "jamsurv/scenario_io.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <string_view>

#include "jamsurv/errors.hpp"

namespace jamsurv {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 13> kKnownKeys = {
    "n_channels", "lambda_a",      "lambda_b",      "lambda_c", "placement",
    "tx_power_db", "jam_budget_db", "noise_sr",     "noise_monitor",
    "noise_st",   "outage_target", "seed",          "samples"};

double number_at(const json& doc, const char* key) {
    const json& v = doc.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string("scenario key '") + key + "' must be a number");
    }
    return v.get<double>();
}

std::uint64_t unsigned_at(const json& doc, const char* key) {
    const json& v = doc.at(key);
    if (!v.is_number_unsigned()) {
        throw ConfigError(std::string("scenario key '") + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

Point parse_point(const json& v, const char* name) {
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    if (v.is_object() && v.size() == 2 && v.contains("x") && v.contains("y") &&
        v["x"].is_number() && v["y"].is_number()) {
        return {v["x"].get<double>(), v["y"].get<double>()};
    }
    throw ConfigError(std::string("placement.") + name + " must be [x, y] or {\"x\":..,\"y\":..}");
}

Placement parse_placement(const json& v) {
    if (!v.is_object()) {
        throw ConfigError("placement must be an object with st, sr, monitor");
    }
    for (const auto& [key, _] : v.items()) {
        if (key != "st" && key != "sr" && key != "monitor") {
            throw ConfigError("unknown placement key '" + key + "'");
        }
    }
    for (const char* k : {"st", "sr", "monitor"}) {
        if (!v.contains(k)) {
            throw ConfigError(std::string("placement is missing '") + k + "'");
        }
    }
    return {parse_point(v["st"], "st"), parse_point(v["sr"], "sr"),
            parse_point(v["monitor"], "monitor")};
}

}  // namespace

ScenarioFile parse_scenario(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("scenario must be a JSON object");
    }
    for (const auto& [key, _] : doc.items()) {
        bool known = false;
        for (auto k : kKnownKeys) known = known || key == k;
        if (!known) {
            throw ConfigError("unknown scenario key '" + key + "'");
        }
    }

    ScenarioFile out;
    ScenarioParams& p = out.params;
    if (doc.contains("n_channels")) {
        const json& v = doc["n_channels"];
        if (!v.is_number_integer()) throw ConfigError("scenario key 'n_channels' must be an integer");
        p.n_channels = v.get<int>();
    }
    if (doc.contains("lambda_a")) p.lambda_a = number_at(doc, "lambda_a");
    if (doc.contains("lambda_b")) p.lambda_b = number_at(doc, "lambda_b");
    if (doc.contains("lambda_c")) p.lambda_c = number_at(doc, "lambda_c");
    if (doc.contains("tx_power_db")) p.tx_power = from_db(number_at(doc, "tx_power_db"));
    if (doc.contains("jam_budget_db")) p.jam_budget = from_db(number_at(doc, "jam_budget_db"));
    if (doc.contains("noise_sr")) p.noise_sr = number_at(doc, "noise_sr");
    if (doc.contains("noise_monitor")) p.noise_monitor = number_at(doc, "noise_monitor");
    if (doc.contains("noise_st")) p.noise_st = number_at(doc, "noise_st");
    if (doc.contains("outage_target")) p.outage_target = number_at(doc, "outage_target");
    if (doc.contains("seed")) out.seed = unsigned_at(doc, "seed");
    if (doc.contains("samples")) out.samples = unsigned_at(doc, "samples");

    try {
        if (doc.contains("placement")) {
            out.placement = parse_placement(doc["placement"]);
            p = apply_placement(p, *out.placement);
        }
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
    return out;
}

ScenarioFile parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open scenario file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

json scenario_to_json(const ScenarioFile& file) {
    const ScenarioParams& p = file.params;
    json doc = {
        {"n_channels", p.n_channels},
        {"lambda_a", p.lambda_a},
        {"lambda_b", p.lambda_b},
        {"lambda_c", p.lambda_c},
        {"tx_power_db", to_db(p.tx_power)},
        {"jam_budget_db", to_db(p.jam_budget)},
        {"noise_sr", p.noise_sr},
        {"noise_monitor", p.noise_monitor},
        {"noise_st", p.noise_st},
        {"outage_target", p.outage_target},
    };
    if (file.placement) {
        const Placement& pl = *file.placement;
        doc["placement"] = {{"st", {pl.st.x, pl.st.y}},
                            {"sr", {pl.sr.x, pl.sr.y}},
                            {"monitor", {pl.monitor.x, pl.monitor.y}}};
        // lambdas are derived from the placement; re-parsing must not see both
        doc.erase("lambda_a");
        doc.erase("lambda_b");
        doc.erase("lambda_c");
    }
    if (file.seed) doc["seed"] = *file.seed;
    if (file.samples) doc["samples"] = *file.samples;
    return doc;
}

}  // namespace jamsurv
