#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heinslab/domain.hpp"
#include "heinslab/expr.hpp"
#include "heinslab/heins.hpp"

// Map-definition files: a JSON document holding the domain block, the
// component expression strings, and (optionally) the parameter block.
// Expressions stay strings in the DSL so the expression parser remains the
// single holomorphy gatekeeper. Complex numbers are [re, im] pairs.
//
// {
//   "name": "affine",
//   "description": "affine contraction of the unit disk",
//   "domain": {"kind": "disk", "center": [[0, 0]], "radii": [1]},
//   "map": ["0.3 + 0.4*z1"],
//   "params": {"names": ["y1"], "domain": {"kind": "disk", "center": [[0, 0]], "radii": [1]}}
// }

namespace heinslab {

struct map_definition {
    std::string name;
    std::string description;
    domain_spec domain = domain_spec::unit_disk();
    std::vector<std::string> sources;
    std::vector<std::string> param_names;
    std::optional<domain_spec> param_domain;
    holomorphic_map map;
    std::string raw_bytes; // exact file contents, for the input digest

    bool has_params() const { return !param_names.empty(); }
};

namespace detail {

inline cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw error("complex values must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline domain_spec domain_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw error("domain block must be an object");
    const std::string kind = j.value("kind", "");
    if (!j.contains("center") || !j.contains("radii"))
        throw error("domain block needs 'kind', 'center' and 'radii'");
    cvec center;
    for (const auto& c : j.at("center")) center.push_back(complex_from_json(c));
    std::vector<double> radii;
    for (const auto& r : j.at("radii")) radii.push_back(r.get<double>());
    if (kind == "disk") {
        if (center.size() != 1 || radii.size() != 1)
            throw error("disk takes one center entry and one radius");
        return domain_spec::disk(center[0], radii[0]);
    }
    if (kind == "ball") {
        if (radii.size() != 1) throw error("ball takes a single radius");
        return domain_spec::ball(std::move(center), radii[0]);
    }
    if (kind == "polydisk") return domain_spec::polydisk(std::move(center), std::move(radii));
    throw error("unknown domain kind '" + kind + "' (disk, ball, polydisk)");
}

} // namespace detail

inline map_definition map_definition_from_json(const nlohmann::json& j, std::string raw_bytes) {
    if (!j.is_object()) throw error("map definition must be a JSON object");
    map_definition def;
    def.raw_bytes = std::move(raw_bytes);
    def.name = j.value("name", "");
    def.description = j.value("description", "");
    def.domain = detail::domain_from_json(j.at("domain"));

    if (!j.contains("map") || !j.at("map").is_array() || j.at("map").empty())
        throw error("'map' must be a non-empty array of expression strings");
    for (const auto& s : j.at("map")) def.sources.push_back(s.get<std::string>());
    if (def.sources.size() != def.domain.dim())
        throw error("component count " + std::to_string(def.sources.size()) +
                    " does not match the domain dimension " + std::to_string(def.domain.dim()));

    std::size_t m = 0;
    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (!p.contains("names") || !p.at("names").is_array() || p.at("names").empty())
            throw error("'params.names' must be a non-empty array");
        for (const auto& nm : p.at("names")) def.param_names.push_back(nm.get<std::string>());
        m = def.param_names.size();
        for (std::size_t k = 0; k < m; ++k)
            if (def.param_names[k] != "y" + std::to_string(k + 1))
                throw error("parameter names must be y1..ym in order; got '" +
                            def.param_names[k] + "' at slot " + std::to_string(k + 1));
        if (!p.contains("domain")) throw error("'params' needs a 'domain' block");
        def.param_domain = detail::domain_from_json(p.at("domain"));
        if (def.param_domain->dim() != m)
            throw error("parameter domain dimension does not match the number of parameters");
    }

    def.map = parse_map(def.sources, def.domain.dim(), m);
    return def;
}

inline map_definition load_map_definition(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open map definition '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw error("invalid JSON in '" + path + "': " + e.what());
    }
    try {
        return map_definition_from_json(j, std::move(bytes));
    } catch (const nlohmann::json::exception& e) {
        throw error("invalid map definition '" + path + "': " + e.what());
    }
}

/// Builds the validated family from a definition with parameters.
inline parametric_family family_from_definition(const map_definition& def,
                                                family_options opts = {}) {
    if (!def.has_params()) throw error("map definition declares no parameters");
    return parametric_family(def.map, def.domain, *def.param_domain, opts);
}

} // namespace heinslab
