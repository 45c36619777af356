#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "heinslab/dynamics.hpp"
#include "heinslab/heins.hpp"
#include "heinslab/matrix.hpp"
#include "heinslab/rng.hpp"
#include "heinslab/types.hpp"

// JSON run reports. Reports are byte-deterministic for identical (input,
// seed, flags): keys keep insertion order, complex numbers are [re, im]
// pairs, and nothing time- or address-dependent is serialized (wall times
// go to the console only).

namespace heinslab {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* report_schema = "heinslab/1";

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

inline ordered_json to_json(const cvec& v) {
    ordered_json out = ordered_json::array();
    for (const cplx& c : v) out.push_back(to_json(c));
    return out;
}

inline ordered_json to_json(const complex_matrix& m) {
    ordered_json out = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

inline ordered_json to_json(const fixed_point_result& r) {
    ordered_json out;
    out["fixed_point"] = to_json(r.fixed_point);
    out["iterations"] = r.iterations;
    out["residual"] = r.residual;
    out["spectral_radius"] = r.spectral_radius;
    out["converged"] = r.converged;
    if (r.orbit) {
        ordered_json orbit = ordered_json::array();
        for (const cvec& p : *r.orbit) orbit.push_back(to_json(p));
        out["orbit"] = std::move(orbit);
    }
    return out;
}

inline ordered_json to_json(const compact_image_report& r) {
    ordered_json out;
    out["is_compact"] = r.is_compact;
    out["min_boundary_margin"] = r.min_boundary_margin;
    out["samples_used"] = r.samples_used;
    if (r.witness) out["witness"] = to_json(*r.witness);
    return out;
}

inline ordered_json to_json(const heins_report& r) {
    ordered_json out;
    out["y0"] = to_json(r.y0);
    out["tau"] = to_json(r.tau);
    out["d_tau"] = to_json(r.d_tau);
    out["jac_space"] = to_json(r.jac_space);
    out["jac_param"] = to_json(r.jac_param);
    out["spectral_radius"] = r.spectral_radius;
    out["iterations"] = r.iterations;
    out["residual"] = r.residual;
    if (r.fd_dtau) out["fd_dtau"] = to_json(*r.fd_dtau);
    if (r.fd_agreement) out["fd_agreement"] = *r.fd_agreement;
    return out;
}

inline std::string digest_hex(std::string_view bytes) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

/// Report skeleton shared by every subcommand.
inline ordered_json make_run_report(std::string_view command, std::string_view input_name,
                                    std::string_view input_bytes, std::uint64_t seed) {
    ordered_json out;
    out["schema"] = report_schema;
    out["tool_version"] = tool_version;
    out["command"] = std::string(command);
    out["input"] = std::string(input_name);
    out["input_digest"] = digest_hex(input_bytes);
    out["seed"] = seed;
    return out;
}

inline void write_report_file(const std::string& path, const ordered_json& report) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write report to '" + path + "'");
    out << report.dump(2) << "\n";
}

} // namespace heinslab
