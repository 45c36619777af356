// Acceptance suite: the end-to-end bar the project has to clear, pinned to
// closed-form oracles. Each criterion prints exactly one pass/fail line;
// run this binary directly (or ctest -V) to see them.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "heinslab/heinslab.hpp"

using namespace heinslab;
using nlohmann::json;

namespace {

void criterion_line(int number, const std::string& name, bool pass) {
    std::printf("[%s] criterion %02d: %s\n", pass ? "PASS" : "FAIL", number, name.c_str());
    std::fflush(stdout);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HEINSLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string fixture(const std::string& name) {
    return std::string(HEINSLAB_FIXTURE_DIR) + "/" + name;
}

parametric_family quadratic_family() {
    return parametric_family(parse_map({"(z1^2 + y1)/4"}, 1, 1), domain_spec::unit_disk(),
                             domain_spec::unit_disk());
}
parametric_family affine_family() {
    return parametric_family(parse_map({"0.3 + y1*z1"}, 1, 1), domain_spec::unit_disk(),
                             domain_spec::disk({0.0, 0.0}, 0.65));
}
parametric_family constants_family() {
    return parametric_family(parse_map({"y1"}, 1, 1), domain_spec::unit_disk(),
                             domain_spec::disk({0.0, 0.0}, 0.9));
}

struct family_case {
    std::string name;
    parametric_family family;
    cvec y0;
};

std::vector<family_case> fixture_families() {
    std::vector<family_case> out;
    out.push_back({"quadratic", quadratic_family(), cvec{{0.0, 0.0}}});
    out.push_back({"affine", affine_family(), cvec{{0.5, 0.0}}});
    out.push_back({"constants", constants_family(), cvec{{0.25, 0.25}}});
    return out;
}

} // namespace

TEST_CASE("criterion 1: affine fixture converges uniquely with certificate 0.4") {
    const holomorphic_map f = parse_map({"0.3 + 0.4*z1"}, 1, 0);
    const domain_spec disk = domain_spec::unit_disk();
    const cplx oracle{0.3 / (1.0 - 0.4), 0.0}; // a/(1 - r)

    split_mix64 rng(1001);
    bool pass = true;
    double worst_pairwise = 0.0, worst_vs_oracle = 0.0, rho = 0.0;
    std::vector<cvec> taus;
    for (int k = 0; k < 20; ++k) {
        const cvec start = vdetail::random_interior(rng, disk, 0.9);
        const fixed_point_result r = iterate_to_fixed_point(f, disk, {}, start, 1e-10);
        pass = pass && r.converged;
        rho = r.spectral_radius;
        worst_vs_oracle = std::max(worst_vs_oracle, std::abs(r.fixed_point[0] - oracle));
        taus.push_back(r.fixed_point);
    }
    for (std::size_t a = 0; a < taus.size(); ++a)
        for (std::size_t b = a + 1; b < taus.size(); ++b)
            worst_pairwise = std::max(worst_pairwise, euclidean_distance(taus[a], taus[b]));

    pass = pass && worst_pairwise <= 1e-9 && worst_vs_oracle <= 1e-9 &&
           std::abs(rho - 0.4) <= 1e-9;
    criterion_line(1, "affine fixture: 20 starts, tau = 0.5, spectral radius 0.4", pass);
    CHECK(worst_pairwise <= 1e-9);
    CHECK(worst_vs_oracle <= 1e-9);
    CHECK(std::abs(rho - 0.4) <= 1e-9);
    REQUIRE(pass);
}

TEST_CASE("criterion 2: quadratic family sensitivity matches both oracles") {
    const parametric_family fam = quadratic_family();
    const cvec y0{{0.0, 0.0}};
    const cvec tau = heins_tau(fam, y0);
    const heins_report rep = heins_differential(fam, y0);
    const complex_matrix fd = finite_difference_dtau(fam, y0, 1e-4);

    // closed form: tau(y) = 2 - sqrt(4 - y), so d tau/d y at 0 is 1/(2 sqrt(4)) = 0.25
    const double tau_err = std::abs(tau[0]);
    const double formula_err = std::abs(rep.d_tau.at(0, 0) - cplx{0.25, 0.0});
    const double fd_err = std::abs(rep.d_tau.at(0, 0) - fd.at(0, 0));
    const bool pass = tau_err <= 1e-10 && formula_err <= 1e-12 && fd_err <= 1e-6;
    criterion_line(2, "quadratic family: tau(0) = 0, d_tau = 1/4 vs both oracles", pass);
    CHECK(tau_err <= 1e-10);
    CHECK(formula_err <= 1e-12);
    CHECK(fd_err <= 1e-6);
    REQUIRE(pass);
}

TEST_CASE("criterion 3: 2-D linear fixture against the exact solve") {
    const holomorphic_map f = parse_map({"0.5*z2", "0.25*z1 + 0.1"}, 2, 0);
    const domain_spec poly = domain_spec::unit_polydisk(2);
    const fixed_point_result r =
        iterate_to_fixed_point(f, poly, {}, cvec{{0.0, 0.0}, {0.0, 0.0}}, 1e-10);

    // oracle: solve z = M z + b exactly; z2 (1 - 0.125) = 0.1
    const double z2 = 0.1 / 0.875, z1 = 0.5 * z2;
    const double fp_err = std::max(std::abs(r.fixed_point[0] - cplx{z1, 0.0}),
                                   std::abs(r.fixed_point[1] - cplx{z2, 0.0}));
    // oracle: eigenvalues +- sqrt(0.5 * 0.25)
    const double rho_err = std::abs(r.spectral_radius - std::sqrt(0.125));
    const bool pass = fp_err <= 1e-9 && rho_err <= 1e-9;
    criterion_line(3, "2-D linear fixture: fixed point (2/35, 4/35), radius sqrt(0.125)", pass);
    CHECK(fp_err <= 1e-9);
    CHECK(rho_err <= 1e-9);
    REQUIRE(pass);
}

TEST_CASE("criterion 4: segment factorization suite") {
    split_mix64 rng(1004);
    double worst_resid = 0.0, worst_limit = 0.0, worst_ratio_slack = -1.0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rep % 3;
        random_map_options opts;
        opts.degree = 4;
        const holomorphic_map h = random_polynomial_map(rng, n, 0, opts);
        const domain_spec dom = n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n);
        const cvec p0 = vdetail::random_interior(rng, dom, 0.9);
        const cvec z = vdetail::random_interior(rng, dom, 0.9);

        const complex_matrix a = segment_factorization(h, p0, z, 32);
        worst_resid = std::max(worst_resid,
                               euclidean_distance(vec_sub(h.evaluate(z), h.evaluate(p0)),
                                                  a * vec_sub(z, p0)));
        worst_limit = std::max(
            worst_limit, max_abs_diff(segment_factorization(h, p0, p0, 32),
                                      jacobian_symbolic(h, p0)));

        // Cauchy-estimate ratio on the nested pair (radius 0.5 inside radius 1)
        const domain_spec small =
            n == 1 ? domain_spec::disk({0.0, 0.0}, 0.5)
                   : domain_spec::polydisk(cvec(n, {0.0, 0.0}), std::vector<double>(n, 0.5));
        const cvec origin(n, cplx{0.0, 0.0});
        double sup_a = 0.0, sup_h = 0.0;
        for (int k = 0; k < 30; ++k) {
            const cvec zz = vdetail::random_interior(rng, small, k < 20 ? 0.999 : 0.5);
            sup_a = std::max(sup_a, operator_norm(segment_factorization(h, origin, zz, 32)));
        }
        for (int k = 0; k < 60; ++k) {
            const cvec w = vdetail::random_interior(rng, dom, k < 45 ? 0.999 : 0.6);
            sup_h = std::max(sup_h, euclidean_norm(h.evaluate(w)));
        }
        worst_ratio_slack =
            std::max(worst_ratio_slack, sup_a / sup_h - 2.0 * static_cast<double>(n));
    }
    const bool pass =
        worst_resid < 1e-10 && worst_limit < 1e-12 && worst_ratio_slack <= 1e-9;
    criterion_line(4, "factorization: residual, Jacobian limit, Cauchy ratio bound", pass);
    CHECK(worst_resid < 1e-10);
    CHECK(worst_limit < 1e-12);
    CHECK(worst_ratio_slack <= 1e-9);
    REQUIRE(pass);
}

TEST_CASE("criterion 5: displacement identity for 20 parameter displacements per family") {
    split_mix64 rng(1005);
    double worst = 0.0;
    for (const family_case& fc : fixture_families()) {
        const cvec p0 = heins_tau(fc.family, fc.y0, 1e-12);
        const holomorphic_map slice0 = fc.family.slice(fc.y0);
        for (int rep = 0; rep < 20; ++rep) {
            cvec y(fc.y0);
            y[0] += 0.01 * rng.next_complex_box();
            const cvec py = heins_tau(fc.family, y, 1e-12);
            const complex_matrix a = segment_factorization(slice0, p0, py, 32);
            const holomorphic_map hy = parameter_increment(fc.family, y, fc.y0);
            const cvec disp = vec_sub(py, p0);
            worst = std::max(worst,
                             euclidean_distance(vec_sub(disp, a * disp), hy.evaluate(py)));
        }
    }
    const bool pass = worst <= 1e-9;
    criterion_line(5, "displacement identity p_y - p_0 = (I - A(y))^{-1} h_y(p_y)", pass);
    CHECK(worst <= 1e-9);
    REQUIRE(pass);
}

TEST_CASE("criterion 6: remainder scales quadratically across the step ladder") {
    split_mix64 rng(1006);
    const std::vector<double> ladder = {1e-2, 1e-3, 1e-4};
    bool pass = true;
    bool measurable = false;
    for (const family_case& fc : fixture_families()) {
        const cvec p0 = heins_tau(fc.family, fc.y0, 1e-12);
        cplx u = rng.next_complex_box();
        u /= std::abs(u);
        std::vector<double> values;
        for (double s : ladder) {
            cvec y(fc.y0);
            y[0] += s * u;
            const cvec py = heins_tau(fc.family, y, 1e-12);
            const holomorphic_map hy = parameter_increment(fc.family, y, fc.y0);
            values.push_back(euclidean_distance(hy.evaluate(py), hy.evaluate(p0)));
        }
        if (*std::max_element(values.begin(), values.end()) < 1e-13)
            continue; // increment independent of z: remainder identically zero, still O(s^2)
        measurable = true;
        for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
            const double slope = (std::log(values[i]) - std::log(values[i + 1])) /
                                 (std::log(ladder[i]) - std::log(ladder[i + 1]));
            INFO(fc.name << " slope " << slope);
            pass = pass && slope > 1.9 && slope < 2.1;
        }
    }
    pass = pass && measurable;
    criterion_line(6, "remainder ||h_y(p_y) - h_y(p_0)|| has log-log slope 2 +- 0.1", pass);
    CHECK(measurable);
    REQUIRE(pass);
}

TEST_CASE("criterion 7: the fixed point is holomorphic in the parameter") {
    double worst = 0.0;
    for (const family_case& fc : fixture_families())
        worst = std::max(worst, wirtinger_antiholomorphic_norm(fc.family, fc.y0, 1e-4));
    const bool pass = worst < 1e-6;
    criterion_line(7, "Wirtinger anti-holomorphic norm of tau below 1e-6", pass);
    CHECK(worst < 1e-6);
    REQUIRE(pass);
}

TEST_CASE("criterion 8: Kobayashi contraction and metric axioms") {
    split_mix64 rng(1008);
    bool pass = true;

    struct self_map_case {
        holomorphic_map map;
        domain_spec dom;
    };
    std::vector<self_map_case> maps;
    maps.push_back({parse_map({"0.3 + 0.4*z1"}, 1, 0), domain_spec::unit_disk()});
    maps.push_back({parse_map({"0.5*z2", "0.25*z1 + 0.1"}, 2, 0), domain_spec::unit_polydisk(2)});
    maps.push_back({parse_map({"z1^2/4"}, 1, 0), domain_spec::unit_disk()});
    for (const family_case& fc : fixture_families())
        maps.push_back({fc.family.slice(fc.y0), fc.family.space_domain()});

    double worst_expansion = -1.0;
    for (const self_map_case& c : maps) {
        for (int rep = 0; rep < 200; ++rep) {
            const cvec z = vdetail::random_interior(rng, c.dom, 0.97);
            const cvec w = vdetail::random_interior(rng, c.dom, 0.97);
            const double before = kobayashi_distance(c.dom, z, w);
            const double after = kobayashi_distance(c.dom, c.map.evaluate(z), c.map.evaluate(w));
            worst_expansion = std::max(worst_expansion, after - before);
        }
    }
    pass = pass && worst_expansion <= 1e-12;

    const std::vector<domain_spec> domains = {
        domain_spec::unit_disk(), domain_spec::unit_ball(2), domain_spec::unit_polydisk(2)};
    double worst_triangle = -1.0;
    bool exact_ok = true;
    for (const domain_spec& dom : domains) {
        for (int rep = 0; rep < 200; ++rep) {
            const cvec a = vdetail::random_interior(rng, dom, 0.95);
            const cvec b = vdetail::random_interior(rng, dom, 0.95);
            const cvec c = vdetail::random_interior(rng, dom, 0.95);
            exact_ok = exact_ok && kobayashi_distance(dom, a, b) == kobayashi_distance(dom, b, a);
            exact_ok = exact_ok && kobayashi_distance(dom, a, a) == 0.0;
            worst_triangle =
                std::max(worst_triangle, kobayashi_distance(dom, a, c) -
                                             kobayashi_distance(dom, a, b) -
                                             kobayashi_distance(dom, b, c));
        }
    }
    pass = pass && exact_ok && worst_triangle <= 1e-12;
    criterion_line(8, "contraction on 200 pairs per fixture; metric axioms on 200 triples", pass);
    CHECK(worst_expansion <= 1e-12);
    CHECK(exact_ok);
    CHECK(worst_triangle <= 1e-12);
    REQUIRE(pass);
}

TEST_CASE("criterion 9: negative control - the identity map") {
    const holomorphic_map ident = identity_map(1);
    const domain_spec disk = domain_spec::unit_disk();
    bool all_rejected = true;
    for (double margin : {1e-9, 1e-6, 1e-3, 0.1, 0.5}) {
        const compact_image_report rep = check_compact_image(ident, disk, {}, margin, 200, 9);
        all_rejected = all_rejected && !rep.is_compact;
    }

    const std::string report_path =
        "/tmp/heinslab_acc9_" + std::to_string(getpid()) + ".json";
    const int code = run_cli("verify " + fixture("identity.json") + " --quiet --json " +
                             report_path);
    int failed = 0;
    std::string failed_id;
    bool report_ok = false;
    if (code == 1) {
        const json rep = json::parse(slurp(report_path));
        for (const auto& c : rep["checks"]) {
            if (c["status"] == "fail") {
                ++failed;
                failed_id = c["id"];
            }
        }
        report_ok = failed == 1 && failed_id == "dynamics.compact-image";
    }
    std::remove(report_path.c_str());

    const bool pass = all_rejected && code == 1 && report_ok;
    criterion_line(9, "identity map rejected at every margin; verify exits 1 on exactly it",
                   pass);
    CHECK(all_rejected);
    CHECK(code == 1);
    CHECK(report_ok);
    REQUIRE(pass);
}

TEST_CASE("criterion 10: verify reports are byte-identical for a fixed seed") {
    const std::string a = "/tmp/heinslab_acc10_a_" + std::to_string(getpid()) + ".json";
    const std::string b = "/tmp/heinslab_acc10_b_" + std::to_string(getpid()) + ".json";
    const int ca = run_cli("verify --builtin-fixtures --seed 7 --quiet --json " + a);
    const int cb = run_cli("verify --builtin-fixtures --seed 7 --quiet --json " + b);
    const std::string bytes_a = slurp(a), bytes_b = slurp(b);
    std::remove(a.c_str());
    std::remove(b.c_str());

    const bool pass = ca == 0 && cb == 0 && !bytes_a.empty() && bytes_a == bytes_b;
    criterion_line(10, "two runs of verify --builtin-fixtures --seed 7 are byte-identical",
                   pass);
    CHECK(ca == 0);
    CHECK(cb == 0);
    CHECK(!bytes_a.empty());
    CHECK(bytes_a == bytes_b);
    REQUIRE(pass);
}
