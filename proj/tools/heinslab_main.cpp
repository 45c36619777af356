// heinslab command-line tool: fixed points of holomorphic self-maps with
// relatively compact image, and the parametric sensitivity of those fixed
// points. Subcommands: fixpoint, heins, kobayashi, trace, verify.
//
// Exit codes:
//   0  success
//   1  verify: at least one invariant failed
//   2  input error (bad file, bad expression, point outside domain, bad flag)
//   3  iteration did not converge within the budget
//   4  compact-image (self-map) hypothesis violated
//   5  heins --fd-check: formula and central-difference oracle disagree

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heinslab/calculus.hpp"
#include "heinslab/domain.hpp"
#include "heinslab/dynamics.hpp"
#include "heinslab/expr.hpp"
#include "heinslab/heins.hpp"
#include "heinslab/mapfile.hpp"
#include "heinslab/report.hpp"
#include "heinslab/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_input_error = 2;
constexpr int exit_no_convergence = 3;
constexpr int exit_holc_violation = 4;
constexpr int exit_fd_mismatch = 5;

using heinslab::cplx;
using heinslab::cvec;

struct global_options {
    std::uint64_t seed = 0;
    std::string json_path;
    bool quiet = false;
};

/// "re,im" coordinates separated by ';' (imaginary part optional):
/// "0.5" or "0.5,0;0,0.25".
cvec parse_cvec_arg(const std::string& text) {
    cvec out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t sep = text.find(';', pos);
        if (sep == std::string::npos) sep = text.size();
        const std::string coord = text.substr(pos, sep - pos);
        const std::size_t comma = coord.find(',');
        char* end = nullptr;
        const std::string re_s = comma == std::string::npos ? coord : coord.substr(0, comma);
        const double re = std::strtod(re_s.c_str(), &end);
        if (end == re_s.c_str() || *end != '\0')
            throw heinslab::error("cannot parse coordinate '" + coord +
                                  "' (expected re or re,im)");
        double im = 0.0;
        if (comma != std::string::npos) {
            const std::string im_s = coord.substr(comma + 1);
            im = std::strtod(im_s.c_str(), &end);
            if (end == im_s.c_str() || *end != '\0')
                throw heinslab::error("cannot parse coordinate '" + coord +
                                      "' (expected re or re,im)");
        }
        out.push_back({re, im});
        pos = sep + 1;
        if (sep == text.size()) break;
    }
    if (out.empty()) throw heinslab::error("empty coordinate list");
    return out;
}

std::string format_complex(cplx v) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", v.real(), v.imag());
    return buf;
}

std::string format_cvec(const cvec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_complex(v[i]);
    }
    return s + "]";
}

class stopwatch {
public:
    stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void emit(const global_options& g, const heinslab::ordered_json& report,
          const stopwatch& watch) {
    if (!g.json_path.empty()) heinslab::write_report_file(g.json_path, report);
    if (!g.quiet) std::printf("wall time: %.1f ms\n", watch.ms());
}

int run_fixpoint(const global_options& g, const std::string& file, const std::string& start_arg,
                 double tol, std::size_t max_iter, bool trace, double margin,
                 std::size_t samples) {
    stopwatch watch;
    const heinslab::map_definition def = heinslab::load_map_definition(file);
    const cvec y0 = def.has_params() ? def.param_domain->center() : cvec{};

    heinslab::ordered_json report =
        heinslab::make_run_report("fixpoint", file, def.raw_bytes, g.seed);
    report["flags"] = {{"tol", tol}, {"max_iter", max_iter}, {"margin", margin},
                       {"samples", samples}, {"trace", trace}, {"start", start_arg}};

    heinslab::compact_image_report compact;
    try {
        compact = heinslab::check_compact_image(def.map, def.domain, y0, margin, samples, g.seed);
    } catch (const heinslab::evaluation_failure& e) {
        std::fprintf(stderr, "error: %s (witness %s)\n", e.what(),
                     format_cvec(e.witness).c_str());
        return exit_holc_violation;
    }
    report["compact_image"] = heinslab::to_json(compact);
    if (!compact.is_compact) {
        report["error"] = "compact-image hypothesis violated";
        if (!g.json_path.empty()) heinslab::write_report_file(g.json_path, report);
        std::fprintf(stderr,
                     "error: image margin %.3g below required %.3g (nearest-boundary witness "
                     "%s); the map is not uniformly interior\n",
                     compact.min_boundary_margin, margin,
                     format_cvec(compact.witness.value_or(cvec{})).c_str());
        return exit_holc_violation;
    }

    const cvec start = start_arg.empty() ? def.domain.center() : parse_cvec_arg(start_arg);
    heinslab::fixed_point_result result;
    try {
        result = heinslab::iterate_to_fixed_point(def.map, def.domain, y0, start, tol, max_iter,
                                                  trace);
    } catch (const heinslab::max_iterations_exceeded& e) {
        std::fprintf(stderr, "error: %s (last iterate %s)\n", e.what(),
                     format_cvec(e.last_iterate).c_str());
        return exit_no_convergence;
    } catch (const heinslab::iterate_left_domain& e) {
        std::fprintf(stderr, "error: %s (witness %s)\n", e.what(),
                     format_cvec(e.witness).c_str());
        return exit_holc_violation;
    }

    report["fixed_point"] = heinslab::to_json(result);
    if (!g.quiet) {
        std::printf("fixed point      %s\n", format_cvec(result.fixed_point).c_str());
        std::printf("iterations       %zu\n", result.iterations);
        std::printf("residual         %.3e\n", result.residual);
        std::printf("spectral radius  %.12g\n", result.spectral_radius);
        if (trace && result.orbit)
            for (std::size_t k = 0; k < result.orbit->size(); ++k)
                std::printf("orbit[%zu] = %s\n", k + 1, format_cvec((*result.orbit)[k]).c_str());
    }
    emit(g, report, watch);
    return exit_ok;
}

int run_heins(const global_options& g, const std::string& file, const std::string& at_arg,
              bool fd_check, double step, double tol) {
    stopwatch watch;
    const heinslab::map_definition def = heinslab::load_map_definition(file);
    if (!def.has_params())
        throw heinslab::error("the heins subcommand needs a map with declared parameters");

    const cvec y0 = at_arg.empty() ? def.param_domain->center() : parse_cvec_arg(at_arg);
    if (y0.size() != def.param_names.size())
        throw heinslab::error("--at needs " + std::to_string(def.param_names.size()) +
                              " coordinates");
    if (!heinslab::contains(*def.param_domain, y0, 0.0))
        throw heinslab::point_outside_domain("--at lies outside the parameter domain");

    heinslab::ordered_json report = heinslab::make_run_report("heins", file, def.raw_bytes, g.seed);
    report["flags"] = {{"at", at_arg}, {"fd_check", fd_check}, {"step", step}, {"tol", tol}};

    heinslab::parametric_family family = heinslab::family_from_definition(def);
    heinslab::heins_report hr;
    try {
        hr = heinslab::heins_differential(family, y0, tol);
    } catch (const heinslab::max_iterations_exceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_no_convergence;
    } catch (const heinslab::iterate_left_domain& e) {
        std::fprintf(stderr, "error: %s (witness %s)\n", e.what(),
                     format_cvec(e.witness).c_str());
        return exit_holc_violation;
    }
    if (fd_check) {
        hr.fd_dtau = heinslab::finite_difference_dtau(family, y0, step);
        hr.fd_agreement = heinslab::max_abs_diff(hr.d_tau, *hr.fd_dtau);
    }
    report["heins"] = heinslab::to_json(hr);

    if (!g.quiet) {
        std::printf("tau(y0)          %s\n", format_cvec(hr.tau).c_str());
        std::printf("spectral radius  %.12g\n", hr.spectral_radius);
        std::printf("d_tau:\n");
        for (std::size_t i = 0; i < hr.d_tau.rows(); ++i) {
            std::printf("  ");
            for (std::size_t j = 0; j < hr.d_tau.cols(); ++j)
                std::printf("%s  ", format_complex(hr.d_tau.at(i, j)).c_str());
            std::printf("\n");
        }
        if (hr.fd_agreement)
            std::printf("fd agreement     %.3e (central differences, step %.1e)\n",
                        *hr.fd_agreement, step);
    }
    emit(g, report, watch);
    if (hr.fd_agreement && *hr.fd_agreement > 1e-5) {
        std::fprintf(stderr,
                     "error: formula and finite-difference oracle disagree by %.3e (> 1e-5)\n",
                     *hr.fd_agreement);
        return exit_fd_mismatch;
    }
    return exit_ok;
}

int run_kobayashi(const global_options& g, const std::string& file, const std::string& from_arg,
                  const std::string& to_arg) {
    stopwatch watch;
    const heinslab::map_definition def = heinslab::load_map_definition(file);
    const cvec from = parse_cvec_arg(from_arg);
    const cvec to = parse_cvec_arg(to_arg);
    const double d = heinslab::kobayashi_distance(def.domain, from, to);

    heinslab::ordered_json report =
        heinslab::make_run_report("kobayashi", file, def.raw_bytes, g.seed);
    report["flags"] = {{"from", from_arg}, {"to", to_arg}};
    report["kobayashi_distance"] = d;
    if (!g.quiet) std::printf("kobayashi distance  %.15g\n", d);
    emit(g, report, watch);
    return exit_ok;
}

int run_trace(const global_options& g, const std::string& file, const std::string& start_arg,
              std::size_t count) {
    stopwatch watch;
    const heinslab::map_definition def = heinslab::load_map_definition(file);
    const cvec y0 = def.has_params() ? def.param_domain->center() : cvec{};
    const cvec start = start_arg.empty() ? def.domain.center() : parse_cvec_arg(start_arg);

    heinslab::ordered_json report = heinslab::make_run_report("trace", file, def.raw_bytes, g.seed);
    report["flags"] = {{"start", start_arg}, {"count", count}};
    std::vector<cvec> orbit;
    try {
        orbit = heinslab::orbit_trace(def.map, def.domain, y0, start, count);
    } catch (const heinslab::iterate_left_domain& e) {
        std::fprintf(stderr, "error: %s (witness %s)\n", e.what(),
                     format_cvec(e.witness).c_str());
        return exit_holc_violation;
    }
    heinslab::ordered_json arr = heinslab::ordered_json::array();
    for (const cvec& p : orbit) arr.push_back(heinslab::to_json(p));
    report["orbit"] = std::move(arr);
    if (!g.quiet)
        for (std::size_t k = 0; k < orbit.size(); ++k)
            std::printf("orbit[%zu] = %s\n", k + 1, format_cvec(orbit[k]).c_str());
    emit(g, report, watch);
    return exit_ok;
}

int run_verify(const global_options& g, const std::string& file, bool builtin) {
    stopwatch watch;
    heinslab::verify_report vr;
    heinslab::ordered_json report;
    if (builtin) {
        vr = heinslab::verify_builtin_fixtures(g.seed);
        report = heinslab::make_run_report("verify", "builtin-fixtures", "builtin-fixtures",
                                           g.seed);
    } else {
        const heinslab::map_definition def = heinslab::load_map_definition(file);
        vr = heinslab::verify_map_definition(def, g.seed);
        report = heinslab::make_run_report("verify", file, def.raw_bytes, g.seed);
    }

    heinslab::ordered_json checks = heinslab::ordered_json::array();
    for (const heinslab::check_result& c : vr.checks) {
        const char* status = c.state == heinslab::check_result::status::pass   ? "pass"
                             : c.state == heinslab::check_result::status::fail ? "fail"
                                                                               : "skip";
        checks.push_back({{"id", c.id}, {"status", status}, {"summary", c.summary},
                          {"detail", c.detail}});
        if (!g.quiet) {
            const char* tag = c.state == heinslab::check_result::status::pass   ? "PASS"
                              : c.state == heinslab::check_result::status::fail ? "FAIL"
                                                                                : "SKIP";
            std::printf("[%s] %-32s %s\n", tag, c.id.c_str(), c.detail.c_str());
        }
    }
    report["checks"] = std::move(checks);
    report["failures"] = vr.failures();
    report["all_passed"] = vr.all_passed();
    if (!g.quiet)
        std::printf("%zu checks, %zu failed\n", vr.checks.size(), vr.failures());
    emit(g, report, watch);
    return vr.all_passed() ? exit_ok : exit_verify_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed points of holomorphic self-maps and their parametric sensitivity"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags are accepted after the subcommand too

    global_options g;
    app.add_option("--seed", g.seed, "seed for all sampling (default 0, echoed in reports)");
    app.add_option("--json", g.json_path, "write the JSON run report to this path");
    app.add_flag("--quiet", g.quiet, "suppress console output");

    std::string file, start_arg, at_arg, from_arg, to_arg;
    double tol = 1e-10, step = 1e-4, margin = 0.01;
    std::size_t max_iter = 100000, samples = 200, count = 10;
    bool trace = false, fd_check = false, builtin = false;

    CLI::App* fixpoint = app.add_subcommand("fixpoint", "iterate to the unique fixed point");
    fixpoint->add_option("file", file, "map definition file")->required();
    fixpoint->add_option("--start", start_arg, "start point re,im;... (default: domain center)");
    fixpoint->add_option("--tol", tol, "stopping tolerance (default 1e-10)");
    fixpoint->add_option("--max-iter", max_iter, "iteration budget (default 100000)");
    fixpoint->add_option("--margin", margin, "compact-image margin (default 0.01)");
    fixpoint->add_option("--samples", samples, "compact-image samples (default 200)");
    fixpoint->add_flag("--trace", trace, "record and print the orbit");

    CLI::App* heins = app.add_subcommand("heins", "fixed-point sensitivity in the parameters");
    heins->add_option("file", file, "map definition file (with params)")->required();
    heins->add_option("--at", at_arg, "base parameter y0 re,im;... (default: parameter center)");
    heins->add_flag("--fd-check", fd_check, "cross-check against central differences");
    heins->add_option("--step", step, "finite-difference step (default 1e-4)");
    heins->add_option("--tol", tol, "fixed-point tolerance (default 1e-10)");

    CLI::App* kobayashi = app.add_subcommand("kobayashi", "Kobayashi distance between points");
    kobayashi->add_option("file", file, "map definition file (for its domain)")->required();
    kobayashi->add_option("--from", from_arg, "first point re,im;...")->required();
    kobayashi->add_option("--to", to_arg, "second point re,im;...")->required();

    CLI::App* trace_cmd = app.add_subcommand("trace", "first iterates of the orbit");
    trace_cmd->add_option("file", file, "map definition file")->required();
    trace_cmd->add_option("--start", start_arg, "start point (default: domain center)");
    trace_cmd->add_option("--count", count, "number of iterates (default 10)");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("file", file, "map definition file to verify");
    verify->add_flag("--builtin-fixtures", builtin, "verify the built-in fixture battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (app.got_subcommand(fixpoint))
            return run_fixpoint(g, file, start_arg, tol, max_iter, trace, margin, samples);
        if (app.got_subcommand(heins)) return run_heins(g, file, at_arg, fd_check, step, tol);
        if (app.got_subcommand(kobayashi)) return run_kobayashi(g, file, from_arg, to_arg);
        if (app.got_subcommand(trace_cmd)) return run_trace(g, file, start_arg, count);
        if (app.got_subcommand(verify)) {
            if (!builtin && file.empty())
                throw heinslab::error("verify needs a file or --builtin-fixtures");
            return run_verify(g, file, builtin);
        }
    } catch (const heinslab::holc_violation& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_holc_violation;
    } catch (const heinslab::evaluation_failure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_holc_violation;
    } catch (const heinslab::max_iterations_exceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_no_convergence;
    } catch (const heinslab::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_input_error;
    }
    return exit_input_error;
}
