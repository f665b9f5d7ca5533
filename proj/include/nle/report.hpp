#pragma once

#include "nle/kernel.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>

namespace nle {

using nlohmann::json;

// Result record for one correlation computation. Values are decimal strings
// at full working precision. Serializes to a fixed JSON shape with keys:
// spec, regions, entropies, mutual, tripartite, ssa_gap, wall_time_ms
// (holography results add phase/config).
struct CorrelationReport {
    json spec;
    std::vector<std::string> regions;
    std::map<std::string, std::string> entropies;
    std::optional<std::string> mutual;
    std::optional<std::string> tripartite;
    std::optional<std::string> ssa_gap;
    std::optional<std::string> phase;
    std::optional<json> config;
    double wall_time_ms = 0.0;

    json to_json() const;
};

json spec_to_json(const LatticeSpec& spec);
LatticeSpec spec_from_json(const json& j);

}  // namespace nle
