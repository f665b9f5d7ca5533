#include "nle/report.hpp"

#include <nlohmann/json.hpp>

namespace nle {

json CorrelationReport::to_json() const {
    json j;
    j["spec"] = spec;
    j["regions"] = regions;
    j["entropies"] = entropies;
    j["mutual"] = mutual ? json(*mutual) : json(nullptr);
    j["tripartite"] = tripartite ? json(*tripartite) : json(nullptr);
    j["ssa_gap"] = ssa_gap ? json(*ssa_gap) : json(nullptr);
    if (phase)
        j["phase"] = *phase;
    if (config)
        j["config"] = *config;
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

json spec_to_json(const LatticeSpec& spec) {
    return json{{"n_sites", spec.n_sites},
                {"omega", spec.omega},
                {"a_param", spec.a_param},
                {"precision_digits", spec.precision_digits}};
}

LatticeSpec spec_from_json(const json& j) {
    LatticeSpec spec;
    spec.n_sites = j.at("n_sites").get<int>();
    spec.omega = j.at("omega").get<double>();
    spec.a_param = j.at("a_param").get<double>();
    spec.precision_digits = j.value("precision_digits", 0);
    return spec;
}

}  // namespace nle
