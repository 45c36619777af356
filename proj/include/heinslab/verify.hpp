#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "heinslab/calculus.hpp"
#include "heinslab/domain.hpp"
#include "heinslab/dynamics.hpp"
#include "heinslab/expr.hpp"
#include "heinslab/fixtures.hpp"
#include "heinslab/heins.hpp"
#include "heinslab/mapfile.hpp"
#include "heinslab/rng.hpp"

// The `verify` runner: every numerical invariant the library promises,
// executed either against the built-in fixture battery or against a user
// map-definition file. Each check is seeded independently from the run seed
// and its id, so the report is deterministic and checks can be reordered
// freely; output is sorted by id, never by completion order.

namespace heinslab {

struct check_result {
    enum class status { pass, fail, skip };
    std::string id;
    std::string summary;
    status state = status::pass;
    std::string detail;
};

struct verify_report {
    std::vector<check_result> checks;

    bool all_passed() const {
        for (const check_result& c : checks)
            if (c.state == check_result::status::fail) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t k = 0;
        for (const check_result& c : checks)
            if (c.state == check_result::status::fail) ++k;
        return k;
    }
};

namespace vdetail {

inline std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof(b), "%.6g", v);
    return b;
}

inline split_mix64 check_rng(std::uint64_t seed, std::string_view id) {
    return split_mix64(derive_seed(seed, fnv1a64(id)));
}

inline check_result pass(std::string id, std::string summary, std::string detail) {
    return {std::move(id), std::move(summary), check_result::status::pass, std::move(detail)};
}
inline check_result fail(std::string id, std::string summary, std::string detail) {
    return {std::move(id), std::move(summary), check_result::status::fail, std::move(detail)};
}
inline check_result skip(std::string id, std::string summary, std::string reason) {
    return {std::move(id), std::move(summary), check_result::status::skip, std::move(reason)};
}

/// Random point with relative radius capped below 1 (per coordinate for
/// disk/polydisk, radially for the ball).
inline cvec random_interior(split_mix64& rng, const domain_spec& dom, double rel_cap) {
    const std::size_t n = dom.dim();
    cvec p(n);
    if (dom.kind() == domain_kind::ball && n > 1) {
        std::vector<double> g(2 * n);
        double s = 0.0;
        for (double& x : g) {
            x = rng.next_gaussian();
            s += x * x;
        }
        s = std::sqrt(s);
        if (s == 0.0) s = 1.0;
        const double rel =
            rel_cap * std::pow(rng.next_unit(), 1.0 / (2.0 * static_cast<double>(n)));
        for (std::size_t j = 0; j < n; ++j)
            p[j] = dom.center()[j] + dom.radii()[0] * rel * cplx{g[2 * j] / s, g[2 * j + 1] / s};
        return p;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double rel = rel_cap * std::sqrt(rng.next_unit());
        const double theta = 2.0 * std::numbers::pi * rng.next_unit();
        p[j] = dom.center()[j] + dom.radius_for(j) * rel * cplx{std::cos(theta), std::sin(theta)};
    }
    return p;
}

/// Random unit direction in C^m.
inline cvec random_direction(split_mix64& rng, std::size_t m) {
    cvec u(m);
    double s = 0.0;
    do {
        for (cplx& c : u) c = rng.next_complex_box();
        s = euclidean_norm(u);
    } while (s < 1e-6);
    for (cplx& c : u) c /= s;
    return u;
}

/// Contour (Cauchy-integral) partial of a single expression in one variable.
inline cplx contour_partial(const expression& e, var_group g, std::size_t index,
                            std::span<const cplx> space, std::span<const cplx> params,
                            double radius, std::size_t nodes) {
    cvec sp(space.begin(), space.end());
    cvec pr(params.begin(), params.end());
    cplx& slot = g == var_group::space ? sp[index] : pr[index];
    const cplx base = slot;
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < nodes; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nodes);
        const cplx rot{std::cos(theta), std::sin(theta)};
        slot = base + radius * rot;
        acc += e.evaluate(sp, pr) * std::conj(rot);
    }
    return acc / (radius * static_cast<double>(nodes));
}

/// Four-point Wirtinger stencil for d e / d conj(var) at the given point.
inline cplx wirtinger_stencil(const expression& e, var_group g, std::size_t index,
                              std::span<const cplx> space, std::span<const cplx> params,
                              double h) {
    cvec sp(space.begin(), space.end());
    cvec pr(params.begin(), params.end());
    cplx& slot = g == var_group::space ? sp[index] : pr[index];
    const cplx base = slot;
    const cplx i_unit{0.0, 1.0};
    slot = base + h;
    const cplx vph = e.evaluate(sp, pr);
    slot = base - h;
    const cplx vmh = e.evaluate(sp, pr);
    slot = base + i_unit * h;
    const cplx vpi = e.evaluate(sp, pr);
    slot = base - i_unit * h;
    const cplx vmi = e.evaluate(sp, pr);
    return (vph - vmh + i_unit * vpi - i_unit * vmi) / (4.0 * h);
}

/// Characteristic-polynomial spectral radius for n <= 3; the closed-form
/// oracle the iterative estimate is checked against. Quadratic formula for
/// n = 2, Cardano for n = 3, in complex arithmetic, with a few Newton steps
/// per root to polish near-degenerate cases (Cardano loses half the digits
/// when the discriminant nearly cancels).
inline double closed_form_spectral_radius(const complex_matrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return std::abs(m.at(0, 0));
    if (n == 2) {
        const cplx tr = m.at(0, 0) + m.at(1, 1);
        const cplx det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
        const cplx disc = std::sqrt(tr * tr - 4.0 * det);
        return std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
    }
    if (n != 3) throw error("closed_form_spectral_radius handles n <= 3 only");
    const cplx tr = m.at(0, 0) + m.at(1, 1) + m.at(2, 2);
    const cplx c2 = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0) +
                    m.at(0, 0) * m.at(2, 2) - m.at(0, 2) * m.at(2, 0) +
                    m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1);
    const cplx det = m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
                     m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
                     m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
    // lambda^3 + a lambda^2 + b lambda + c, depressed via lambda = t - a/3
    const cplx a = -tr, b = c2, c = -det;
    const cplx p = b - a * a / 3.0;
    const cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const cplx shift = -a / 3.0;
    if (std::abs(p) < 1e-300 && std::abs(q) < 1e-300) return std::abs(shift);
    const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx ucube = -q / 2.0 + disc;
    if (std::abs(ucube) < 1e-300) ucube = -q / 2.0 - disc;
    const cplx u = std::pow(ucube, 1.0 / 3.0);
    const cplx omega{-0.5, std::sqrt(3.0) / 2.0};
    const auto poly = [&](cplx x) { return ((x + a) * x + b) * x + c; };
    const auto dpoly = [&](cplx x) { return (3.0 * x + 2.0 * a) * x + b; };
    double best = 0.0;
    cplx uk = u;
    for (int k = 0; k < 3; ++k) {
        cplx lambda = uk - p / (3.0 * uk) + shift;
        for (int it = 0; it < 4; ++it) {
            const cplx d = dpoly(lambda);
            if (std::abs(d) < 1e-300) break;
            lambda -= poly(lambda) / d;
        }
        best = std::max(best, std::abs(lambda));
        uk *= omega;
    }
    return best;
}

} // namespace vdetail

// ---------------------------------------------------------------------------
// Individual checks. Each returns one check_result and draws its randomness
// from the run seed and its own id.

namespace checks {

/// A self-map (with parameters already chosen) under a name, as check input.
struct named_self_map {
    std::string name;
    holomorphic_map map;
    domain_spec dom;
    cvec params;
    double compact_margin = 0.01;
    bool slow = false;
    bool linear = false;
};

inline check_result expr_roundtrip(std::uint64_t seed, const std::vector<std::string>& sources) {
    const std::string id = "expr.roundtrip";
    const std::string summary = "print -> reparse evaluates bit-identically";
    auto rng = vdetail::check_rng(seed, id);
    std::size_t points_checked = 0;
    for (const std::string& src : sources) {
        expression e1, e2;
        try {
            e1 = parse_expression(src);
            e2 = parse_expression(to_string(e1));
        } catch (const error& err) {
            return vdetail::fail(id, summary, "'" + src + "' failed to reparse: " + err.what());
        }
        const std::size_t ns = e1.max_space_index(), np = e1.max_param_index();
        for (int k = 0; k < 100; ++k) {
            cvec z(ns), y(np);
            for (cplx& c : z) c = 0.9 * rng.next_complex_box();
            for (cplx& c : y) c = 0.9 * rng.next_complex_box();
            const cplx v1 = e1.evaluate(z, y);
            const cplx v2 = e2.evaluate(z, y);
            if (!(v1 == v2))
                return vdetail::fail(id, summary,
                                     "'" + src + "' reprints to '" + to_string(e1) +
                                         "' which evaluates differently");
            ++points_checked;
        }
    }
    return vdetail::pass(id, summary,
                         std::to_string(sources.size()) + " expressions x 100 points (" +
                             std::to_string(points_checked) + " evaluations bit-identical)");
}

inline check_result expr_cauchy_riemann(std::uint64_t seed,
                                        const std::vector<std::string>& sources) {
    const std::string id = "expr.cauchy-riemann";
    const std::string summary = "Wirtinger stencil vanishes on everything the grammar admits";
    auto rng = vdetail::check_rng(seed, id);
    const double h = 1e-5, bound = 1e-6;
    double worst = 0.0;
    std::string worst_src;
    for (const std::string& src : sources) {
        const expression e = parse_expression(src);
        const std::size_t ns = e.max_space_index(), np = e.max_param_index();
        for (int rep = 0; rep < 5; ++rep) {
            cvec z(ns), y(np);
            for (cplx& c : z) c = 0.5 * rng.next_complex_box();
            for (cplx& c : y) c = 0.5 * rng.next_complex_box();
            for (std::size_t j = 0; j < ns; ++j) {
                const double v =
                    std::abs(vdetail::wirtinger_stencil(e, var_group::space, j, z, y, h));
                if (v > worst) {
                    worst = v;
                    worst_src = src;
                }
            }
            for (std::size_t j = 0; j < np; ++j) {
                const double v =
                    std::abs(vdetail::wirtinger_stencil(e, var_group::param, j, z, y, h));
                if (v > worst) {
                    worst = v;
                    worst_src = src;
                }
            }
        }
    }
    if (!(worst < bound))
        return vdetail::fail(id, summary,
                             "anti-holomorphic derivative " + vdetail::fmt(worst) + " >= " +
                                 vdetail::fmt(bound) + " for '" + worst_src + "'");
    return vdetail::pass(id, summary,
                         "max |d/d conj| = " + vdetail::fmt(worst) + " < " + vdetail::fmt(bound));
}

inline check_result expr_symbolic_vs_contour(std::uint64_t seed) {
    const std::string id = "expr.symbolic-vs-contour";
    const std::string summary = "symbolic partials match Cauchy-integral differentiation";
    auto rng = vdetail::check_rng(seed, id);
    const double bound = 1e-10;
    double worst = 0.0;
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 1 + rep % 2;
        random_map_options opts;
        opts.degree = 3;
        opts.with_exp = rep % 3 == 0;
        const holomorphic_map map = random_polynomial_map(rng, n, 0, opts);
        cvec z(n);
        for (cplx& c : z) c = 0.4 * rng.next_complex_box();
        for (const expression& e : map.components()) {
            for (std::size_t j = 0; j < n; ++j) {
                const cplx sym = symbolic_partial(e, var_group::space, j).evaluate(z, {});
                const cplx con =
                    vdetail::contour_partial(e, var_group::space, j, z, {}, 0.25, 32);
                worst = std::max(worst, std::abs(sym - con) / std::max(1.0, std::abs(sym)));
            }
        }
    }
    if (!(worst < bound))
        return vdetail::fail(id, summary, "relative disagreement " + vdetail::fmt(worst));
    return vdetail::pass(id, summary,
                         "max relative disagreement " + vdetail::fmt(worst) + " < " +
                             vdetail::fmt(bound) + " (relative to max(1, |value|))");
}

inline check_result domains_metric_axioms(std::uint64_t seed,
                                          const std::vector<domain_spec>& domains) {
    const std::string id = "domains.metric-axioms";
    const std::string summary = "symmetry exact, zero on the diagonal, triangle inequality";
    auto rng = vdetail::check_rng(seed, id);
    double worst_triangle = -std::numeric_limits<double>::infinity();
    for (const domain_spec& dom : domains) {
        for (int rep = 0; rep < 200; ++rep) {
            const cvec a = vdetail::random_interior(rng, dom, 0.95);
            const cvec b = vdetail::random_interior(rng, dom, 0.95);
            const cvec c = vdetail::random_interior(rng, dom, 0.95);
            const double ab = kobayashi_distance(dom, a, b);
            if (ab != kobayashi_distance(dom, b, a))
                return vdetail::fail(id, summary,
                                     std::string("symmetry violated on ") +
                                         domain_kind_name(dom.kind()));
            if (kobayashi_distance(dom, a, a) != 0.0)
                return vdetail::fail(
                    id, summary, std::string("k(z,z) != 0 on ") + domain_kind_name(dom.kind()));
            const double ac = kobayashi_distance(dom, a, c);
            const double bc = kobayashi_distance(dom, b, c);
            worst_triangle = std::max(worst_triangle, ac - (ab + bc));
        }
    }
    if (!(worst_triangle <= 1e-12))
        return vdetail::fail(id, summary, "triangle violated by " + vdetail::fmt(worst_triangle));
    return vdetail::pass(id, summary,
                         "200 triples per kind; worst triangle slack " +
                             vdetail::fmt(worst_triangle) + " <= 1e-12");
}

inline check_result domains_normalization(std::uint64_t seed,
                                          const std::vector<domain_spec>& domains) {
    const std::string id = "domains.normalization-invariance";
    const std::string summary = "distance is invariant under the affine map to the unit model";
    auto rng = vdetail::check_rng(seed, id);
    double worst = 0.0;
    for (const domain_spec& dom : domains) {
        domain_spec unit = dom.kind() == domain_kind::disk ? domain_spec::unit_disk()
                           : dom.kind() == domain_kind::ball
                               ? domain_spec::unit_ball(dom.dim())
                               : domain_spec::unit_polydisk(dom.dim());
        for (int rep = 0; rep < 100; ++rep) {
            const cvec z = vdetail::random_interior(rng, dom, 0.95);
            const cvec w = vdetail::random_interior(rng, dom, 0.95);
            cvec zu(z.size()), wu(w.size());
            for (std::size_t j = 0; j < z.size(); ++j) {
                zu[j] = (z[j] - dom.center()[j]) / dom.radius_for(j);
                wu[j] = (w[j] - dom.center()[j]) / dom.radius_for(j);
            }
            worst = std::max(worst, std::abs(kobayashi_distance(dom, z, w) -
                                             kobayashi_distance(unit, zu, wu)));
        }
    }
    if (!(worst <= 1e-12))
        return vdetail::fail(id, summary, "disagreement " + vdetail::fmt(worst));
    return vdetail::pass(id, summary, "worst disagreement " + vdetail::fmt(worst) + " <= 1e-12");
}

inline check_result domains_contraction(std::uint64_t seed,
                                        const std::vector<named_self_map>& maps) {
    const std::string id = "domains.contraction";
    const std::string summary = "holomorphic self-maps contract the Kobayashi distance";
    auto rng = vdetail::check_rng(seed, id);
    double worst = -std::numeric_limits<double>::infinity();
    for (const named_self_map& f : maps) {
        for (int rep = 0; rep < 200; ++rep) {
            const cvec z = vdetail::random_interior(rng, f.dom, 0.97);
            const cvec w = vdetail::random_interior(rng, f.dom, 0.97);
            cvec fz, fw;
            try {
                fz = f.map.evaluate(z, f.params);
                fw = f.map.evaluate(w, f.params);
            } catch (const error& e) {
                return vdetail::skip(id, summary, f.name + " could not be evaluated: " + e.what());
            }
            if (!contains(f.dom, fz, 0.0) || !contains(f.dom, fw, 0.0))
                return vdetail::skip(id, summary,
                                     f.name + " is not a self-map; contraction undefined");
            worst = std::max(worst, kobayashi_distance(f.dom, fz, fw) -
                                        kobayashi_distance(f.dom, z, w));
        }
    }
    if (!(worst <= 1e-12))
        return vdetail::fail(id, summary, "expansion by " + vdetail::fmt(worst));
    return vdetail::pass(id, summary,
                         "200 pairs per map; worst k(f z, f w) - k(z, w) = " +
                             vdetail::fmt(worst) + " <= 1e-12");
}

inline check_result calculus_factorization_residual(std::uint64_t seed,
                                                    const std::vector<named_self_map>& extra) {
    const std::string id = "calculus.factorization-residual";
    const std::string summary = "h(z) - h(p0) = A(z) (z - p0) at 32 quadrature nodes";
    auto rng = vdetail::check_rng(seed, id);
    double worst = 0.0;
    auto run_case = [&](const holomorphic_map& h, const domain_spec& dom) {
        const cvec p0 = vdetail::random_interior(rng, dom, 0.9);
        const cvec z = vdetail::random_interior(rng, dom, 0.9);
        const complex_matrix a = segment_factorization(h, p0, z, 32);
        const cvec diff = vec_sub(h.evaluate(z), h.evaluate(p0));
        const cvec az = a * vec_sub(z, p0);
        worst = std::max(worst, euclidean_distance(diff, az));
    };
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rep % 3;
        random_map_options opts;
        opts.degree = 4;
        opts.with_exp = rep % 4 == 0;
        const holomorphic_map h = random_polynomial_map(rng, n, 0, opts);
        run_case(h, n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n));
    }
    for (const named_self_map& f : extra) {
        try {
            for (int rep = 0; rep < 10; ++rep)
                run_case(f.params.empty() ? f.map : f.map.bind_params(f.params), f.dom);
        } catch (const error& e) {
            return vdetail::fail(id, summary, f.name + ": " + e.what());
        }
    }
    if (!(worst < 1e-10))
        return vdetail::fail(id, summary, "residual " + vdetail::fmt(worst) + " >= 1e-10");
    return vdetail::pass(id, summary, "worst residual " + vdetail::fmt(worst) + " < 1e-10");
}

inline check_result calculus_factorization_limit(std::uint64_t seed,
                                                 const std::vector<named_self_map>& extra) {
    const std::string id = "calculus.factorization-limit";
    const std::string summary = "A(p0) equals the Jacobian at p0";
    auto rng = vdetail::check_rng(seed, id);
    double worst = 0.0;
    auto run_case = [&](const holomorphic_map& h, const domain_spec& dom) {
        const cvec p0 = vdetail::random_interior(rng, dom, 0.9);
        const complex_matrix a = segment_factorization(h, p0, p0, 32);
        const complex_matrix j = jacobian_symbolic(h, p0);
        worst = std::max(worst, max_abs_diff(a, j));
    };
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rep % 3;
        random_map_options opts;
        opts.degree = 4;
        opts.with_exp = rep % 4 == 0;
        const holomorphic_map h = random_polynomial_map(rng, n, 0, opts);
        run_case(h, n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n));
    }
    for (const named_self_map& f : extra) {
        try {
            run_case(f.params.empty() ? f.map : f.map.bind_params(f.params), f.dom);
        } catch (const error& e) {
            return vdetail::fail(id, summary, f.name + ": " + e.what());
        }
    }
    if (!(worst < 1e-12))
        return vdetail::fail(id, summary, "deviation " + vdetail::fmt(worst) + " >= 1e-12");
    return vdetail::pass(id, summary, "worst |A(p0) - dh(p0)| = " + vdetail::fmt(worst));
}

inline check_result calculus_cauchy_ratio(std::uint64_t seed) {
    const std::string id = "calculus.cauchy-ratio";
    const std::string summary = "sup ||A|| / sup ||h|| bounded by n/(1-r) on the nested pair";
    auto rng = vdetail::check_rng(seed, id);
    double worst_slack = -std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rep % 3;
        random_map_options opts;
        opts.degree = 4;
        const holomorphic_map h = random_polynomial_map(rng, n, 0, opts);
        const domain_spec big = n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n);
        const domain_spec small = n == 1
                                      ? domain_spec::disk({0.0, 0.0}, 0.5)
                                      : domain_spec::polydisk(cvec(n, {0.0, 0.0}),
                                                              std::vector<double>(n, 0.5));
        const cvec p0(n, cplx{0.0, 0.0});
        double sup_a = 0.0;
        for (int k = 0; k < 40; ++k) {
            const double cap = k < 30 ? 0.999 : 0.5; // shell-heavy sampling of P1
            const cvec z = vdetail::random_interior(rng, small, cap);
            sup_a = std::max(sup_a, operator_norm(segment_factorization(h, p0, z, 32)));
        }
        double sup_h = 0.0;
        for (int k = 0; k < 80; ++k) {
            const double cap = k < 60 ? 0.999 : 0.6;
            const cvec w = vdetail::random_interior(rng, big, cap);
            sup_h = std::max(sup_h, euclidean_norm(h.evaluate(w)));
        }
        const double bound = static_cast<double>(n) / (1.0 - 0.5);
        worst_slack = std::max(worst_slack, sup_a / sup_h - bound);
    }
    if (!(worst_slack <= 1e-9))
        return vdetail::fail(id, summary, "ratio exceeds 2n by " + vdetail::fmt(worst_slack));
    return vdetail::pass(id, summary,
                         "50 random polynomial h; worst ratio slack vs 2n = " +
                             vdetail::fmt(worst_slack));
}

inline check_result calculus_jacobian_agreement(std::uint64_t seed,
                                                const std::vector<named_self_map>& maps,
                                                bool with_random_battery) {
    const std::string id = "calculus.jacobian-agreement";
    const std::string summary = "contour and symbolic Jacobians agree";
    auto rng = vdetail::check_rng(seed, id);
    double worst = 0.0;
    auto run_case = [&](const holomorphic_map& map, const domain_spec& dom, const cvec& params) {
        const cvec z = vdetail::random_interior(rng, dom, 0.5);
        const double radius = default_contour_radius(dom, z);
        const complex_matrix sym = jacobian_symbolic(map, z, params);
        const complex_matrix con = jacobian_contour(map, dom, z, params, radius, 32);
        worst = std::max(worst, max_abs_diff(sym, con) / std::max(1.0, max_abs_entry(sym)));
    };
    if (with_random_battery) {
        for (int rep = 0; rep < 50; ++rep) {
            const std::size_t n = 1 + rep % 3;
            random_map_options opts;
            opts.degree = 3;
            opts.sup_bound = 0.8;
            opts.with_exp = rep % 5 == 0;
            const holomorphic_map map = random_polynomial_map(rng, n, 0, opts);
            run_case(map, n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n), {});
        }
    }
    for (const named_self_map& f : maps) {
        try {
            for (int rep = 0; rep < 5; ++rep) run_case(f.map, f.dom, f.params);
        } catch (const error& e) {
            return vdetail::fail(id, summary, f.name + ": " + e.what());
        }
    }
    if (!(worst < 1e-9))
        return vdetail::fail(id, summary, "relative disagreement " + vdetail::fmt(worst));
    return vdetail::pass(id, summary,
                         "max relative entry disagreement " + vdetail::fmt(worst) + " < 1e-9");
}

inline check_result calculus_spectral_radius_roots(std::uint64_t seed) {
    const std::string id = "calculus.spectral-radius-roots";
    const std::string summary = "iterative spectral radius matches characteristic roots (n <= 3)";
    auto rng = vdetail::check_rng(seed, id);
    double worst = 0.0;
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = 1 + rep % 3;
        complex_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = 0.8 * rng.next_complex_box();
        const double iterative = spectral_radius(m);
        const double closed = vdetail::closed_form_spectral_radius(m);
        worst = std::max(worst, std::abs(iterative - closed) / std::max(1.0, closed));
    }
    if (!(worst <= 1e-9))
        return vdetail::fail(id, summary, "disagreement " + vdetail::fmt(worst) + " > 1e-9");
    return vdetail::pass(id, summary,
                         "60 random matrices; worst disagreement " + vdetail::fmt(worst));
}

inline check_result dynamics_compact_image(std::uint64_t seed,
                                           const std::vector<named_self_map>& maps) {
    const std::string id = "dynamics.compact-image";
    const std::string summary = "the image stays uniformly away from the boundary";
    double worst_margin = std::numeric_limits<double>::infinity();
    for (const named_self_map& f : maps) {
        try {
            const compact_image_report rep = check_compact_image(
                f.map, f.dom, f.params, f.compact_margin, 200, derive_seed(seed, fnv1a64(id)));
            if (!rep.is_compact)
                return vdetail::fail(id, summary,
                                     f.name + ": min image margin " +
                                         vdetail::fmt(rep.min_boundary_margin) +
                                         " below required " + vdetail::fmt(f.compact_margin));
            worst_margin = std::min(worst_margin, rep.min_boundary_margin);
        } catch (const evaluation_failure& e) {
            return vdetail::fail(id, summary, f.name + ": " + e.what());
        }
    }
    return vdetail::pass(id, summary,
                         "all maps compact at their margins; smallest image margin " +
                             vdetail::fmt(worst_margin));
}

inline check_result dynamics_negative_control(std::uint64_t seed) {
    const std::string id = "dynamics.negative-control";
    const std::string summary = "the identity map fails the compact-image check at every margin";
    for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
        const holomorphic_map ident = identity_map(n);
        const domain_spec dom = n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n);
        for (double margin : {1e-9, 1e-6, 1e-3, 0.1, 0.5}) {
            const compact_image_report rep =
                check_compact_image(ident, dom, {}, margin, 200, derive_seed(seed, fnv1a64(id)));
            if (rep.is_compact)
                return vdetail::fail(id, summary,
                                     "identity reported compact at margin " + vdetail::fmt(margin));
        }
    }
    return vdetail::pass(id, summary, "margins 1e-9 .. 0.5 all rejected in dimensions 1 and 2");
}

inline check_result dynamics_uniqueness(std::uint64_t seed,
                                        const std::vector<named_self_map>& maps, double tol) {
    const std::string id = "dynamics.uniqueness";
    const std::string summary = "20 random starts land on the same fixed point";
    auto rng = vdetail::check_rng(seed, id);
    double worst = 0.0;
    for (const named_self_map& f : maps) {
        std::vector<cvec> taus;
        double rho = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            const cvec start = vdetail::random_interior(rng, f.dom, 0.9);
            try {
                const fixed_point_result r =
                    iterate_to_fixed_point(f.map, f.dom, f.params, start, tol);
                taus.push_back(r.fixed_point);
                rho = r.spectral_radius;
            } catch (const error& e) {
                return vdetail::fail(id, summary, f.name + ": " + e.what());
            }
        }
        // 2 tol for the margin-bounded fixtures; rate-scaled for contractions
        // with rho near 1, where the stopping rule leaves error ~ tol/(1-rho)
        const double bound = 2.0 * tol * std::max(1.0, rho / (1.0 - rho));
        for (std::size_t a = 0; a < taus.size(); ++a)
            for (std::size_t b = a + 1; b < taus.size(); ++b) {
                const double d = euclidean_distance(taus[a], taus[b]);
                if (d > bound)
                    return vdetail::fail(id, summary,
                                         f.name + ": fixed points " + vdetail::fmt(d) +
                                             " apart (allowed " + vdetail::fmt(bound) + ")");
                worst = std::max(worst, d);
            }
    }
    return vdetail::pass(id, summary, "worst pairwise distance " + vdetail::fmt(worst));
}

inline check_result dynamics_residual(std::uint64_t seed,
                                      const std::vector<named_self_map>& maps, double tol) {
    const std::string id = "dynamics.residual";
    const std::string summary = "||f(tau) - tau|| <= tol on every successful run";
    auto rng = vdetail::check_rng(seed, id);
    double worst = 0.0;
    for (const named_self_map& f : maps) {
        for (int rep = 0; rep < 5; ++rep) {
            const cvec start = vdetail::random_interior(rng, f.dom, 0.9);
            try {
                const fixed_point_result r =
                    iterate_to_fixed_point(f.map, f.dom, f.params, start, tol);
                if (!r.converged || r.residual > tol)
                    return vdetail::fail(id, summary,
                                         f.name + ": residual " + vdetail::fmt(r.residual));
                worst = std::max(worst, r.residual);
            } catch (const error& e) {
                return vdetail::fail(id, summary, f.name + ": " + e.what());
            }
        }
    }
    return vdetail::pass(id, summary, "worst residual " + vdetail::fmt(worst));
}

inline check_result dynamics_attraction(std::uint64_t seed,
                                        const std::vector<named_self_map>& maps, double tol) {
    const std::string id = "dynamics.attraction";
    const std::string summary = "spectral radius at the fixed point is strictly below one";
    auto rng = vdetail::check_rng(seed, id);
    double worst = 0.0;
    for (const named_self_map& f : maps) {
        const cvec start = vdetail::random_interior(rng, f.dom, 0.8);
        try {
            const fixed_point_result r = iterate_to_fixed_point(f.map, f.dom, f.params, start, tol);
            if (!(r.spectral_radius < 1.0 - 1e-6))
                return vdetail::fail(id, summary,
                                     f.name + ": spectral radius " +
                                         vdetail::fmt(r.spectral_radius));
            worst = std::max(worst, r.spectral_radius);
        } catch (const error& e) {
            return vdetail::fail(id, summary, f.name + ": " + e.what());
        }
    }
    return vdetail::pass(id, summary, "largest certificate " + vdetail::fmt(worst) + " < 1 - 1e-6");
}

inline check_result dynamics_orbit_contraction(std::uint64_t seed,
                                               const std::vector<named_self_map>& maps,
                                               double tol) {
    const std::string id = "dynamics.orbit-contraction";
    const std::string summary = "Kobayashi distance to the fixed point decreases along orbits";
    auto rng = vdetail::check_rng(seed, id);
    double worst = -std::numeric_limits<double>::infinity();
    for (const named_self_map& f : maps) {
        const cvec start = vdetail::random_interior(rng, f.dom, 0.9);
        try {
            const fixed_point_result r =
                iterate_to_fixed_point(f.map, f.dom, f.params, start, tol, 100000, true);
            double prev = kobayashi_distance(f.dom, start, r.fixed_point);
            for (const cvec& zk : *r.orbit) {
                const double cur = kobayashi_distance(f.dom, zk, r.fixed_point);
                // below ~1e-7 the solver error in tau dominates the distances
                if (prev > 1e-7) worst = std::max(worst, cur - prev);
                prev = cur;
            }
        } catch (const error& e) {
            return vdetail::fail(id, summary, f.name + ": " + e.what());
        }
    }
    if (!(worst <= 1e-12))
        return vdetail::fail(id, summary, "distance increased by " + vdetail::fmt(worst));
    return vdetail::pass(id, summary,
                         "worst increase " + vdetail::fmt(worst) + " <= 1e-12 (checked down to "
                         "distance 1e-7)");
}

inline check_result dynamics_linear_rate(std::uint64_t seed,
                                         const std::vector<named_self_map>& maps, double tol) {
    const std::string id = "dynamics.linear-rate";
    const std::string summary = "observed contraction rate matches the spectral radius";
    auto rng = vdetail::check_rng(seed, id);
    double worst_rel = 0.0;
    bool any = false;
    for (const named_self_map& f : maps) {
        if (!f.linear) continue;
        any = true;
        const cvec start = vdetail::random_interior(rng, f.dom, 0.8);
        try {
            const std::vector<cvec> orbit = orbit_trace(f.map, f.dom, f.params, start, 40);
            std::vector<double> steps;
            steps.push_back(euclidean_distance(orbit[0], start));
            for (std::size_t k = 0; k + 1 < orbit.size(); ++k)
                steps.push_back(euclidean_distance(orbit[k + 1], orbit[k]));
            const std::size_t a = 15, w = 10; // geometric mean rate over a 10-step window
            const double est = std::pow(steps[a + w] / steps[a], 1.0 / static_cast<double>(w));
            const fixed_point_result r = iterate_to_fixed_point(f.map, f.dom, f.params, start, tol);
            const double rel = std::abs(est - r.spectral_radius) / r.spectral_radius;
            if (rel > 0.05)
                return vdetail::fail(id, summary,
                                     f.name + ": observed rate " + vdetail::fmt(est) +
                                         " vs spectral radius " +
                                         vdetail::fmt(r.spectral_radius));
            worst_rel = std::max(worst_rel, rel);
        } catch (const error& e) {
            return vdetail::fail(id, summary, f.name + ": " + e.what());
        }
    }
    if (!any) return vdetail::skip(id, summary, "no linear fixture among the inputs");
    return vdetail::pass(id, summary,
                         "worst relative rate error " + vdetail::fmt(worst_rel) + " <= 5%");
}

// --------------------------------------------------------------------------
// Parametric family checks

struct named_family {
    std::string name;
    parametric_family family;
    cvec y0;
};

inline check_result heins_formula_vs_fd(std::uint64_t seed, const std::vector<named_family>& fams,
                                        bool with_random_battery) {
    const std::string id = "heins.formula-vs-fd";
    const std::string summary = "sensitivity formula matches the central-difference oracle";
    auto rng = vdetail::check_rng(seed, id);
    double worst = 0.0;
    auto run_case = [&](const parametric_family& family, const cvec& y0,
                        const std::string& name) -> std::optional<check_result> {
        try {
            const heins_report rep = heins_differential(family, y0);
            const complex_matrix fd = finite_difference_dtau(family, y0, 1e-4);
            const double diff = max_abs_diff(rep.d_tau, fd);
            if (diff >= 1e-6)
                return vdetail::fail(id, summary,
                                     name + ": |formula - central difference| = " +
                                         vdetail::fmt(diff) + " >= 1e-6");
            worst = std::max(worst, diff);
        } catch (const error& e) {
            return vdetail::fail(id, summary, name + ": " + e.what());
        }
        return std::nullopt;
    };
    for (const named_family& nf : fams)
        if (auto bad = run_case(nf.family, nf.y0, nf.name)) return *bad;
    if (with_random_battery) {
        for (int rep = 0; rep < 20; ++rep) {
            const std::size_t n = 1 + rep % 2;
            const std::size_t m = 1 + (rep / 2) % 2;
            const parametric_family family = random_polynomial_family(rng, n, m, 3);
            const cvec y0(m, cplx{0.0, 0.0});
            if (auto bad = run_case(family, y0, "random-family-" + std::to_string(rep)))
                return *bad;
        }
    }
    return vdetail::pass(id, summary, "worst entrywise gap " + vdetail::fmt(worst) + " < 1e-6");
}

inline check_result heins_displacement_identity(std::uint64_t seed,
                                                const std::vector<named_family>& fams) {
    const std::string id = "heins.displacement-identity";
    const std::string summary = "p_y - p_0 = (I - A(y))^{-1} h_y(p_y) for nearby parameters";
    auto rng = vdetail::check_rng(seed, id);
    const double radius = 0.01, solver_tol = 1e-12;
    double worst = 0.0;
    for (const named_family& nf : fams) {
        try {
            const std::size_t m = nf.family.map().param_dim();
            const cvec p0 = heins_tau(nf.family, nf.y0, solver_tol);
            const holomorphic_map slice0 = nf.family.slice(nf.y0);
            for (int rep = 0; rep < 20; ++rep) {
                const cvec u = vdetail::random_direction(rng, m);
                cvec y(nf.y0);
                const double r = radius * rng.next_unit();
                for (std::size_t j = 0; j < m; ++j) y[j] += r * u[j];
                const cvec py = heins_tau(nf.family, y, solver_tol);
                const complex_matrix a = segment_factorization(slice0, p0, py, 32);
                const holomorphic_map hy = parameter_increment(nf.family, y, nf.y0);
                const cvec disp = vec_sub(py, p0);
                const cvec lhs = vec_sub(disp, a * disp);
                worst = std::max(worst, euclidean_distance(lhs, hy.evaluate(py)));
            }
        } catch (const error& e) {
            return vdetail::fail(id, summary, nf.name + ": " + e.what());
        }
    }
    if (!(worst <= 1e-9))
        return vdetail::fail(id, summary, "identity off by " + vdetail::fmt(worst));
    return vdetail::pass(id, summary,
                         "20 displacements per family; worst residual " + vdetail::fmt(worst) +
                             " <= 1e-9");
}

inline check_result heins_remainder_slope(std::uint64_t seed,
                                          const std::vector<named_family>& fams) {
    const std::string id = "heins.remainder-slope";
    const std::string summary = "||h_y(p_y) - h_y(p_0)|| scales quadratically in ||y - y0||";
    auto rng = vdetail::check_rng(seed, id);
    const std::vector<double> ladder = {1e-2, 1e-3, 1e-4};
    const double solver_tol = 1e-12;
    double worst_slope_err = 0.0;
    for (const named_family& nf : fams) {
        try {
            const std::size_t m = nf.family.map().param_dim();
            const cvec u = vdetail::random_direction(rng, m);
            const cvec p0 = heins_tau(nf.family, nf.y0, solver_tol);
            std::vector<double> values;
            for (double s : ladder) {
                cvec y(nf.y0);
                for (std::size_t j = 0; j < m; ++j) y[j] += s * u[j];
                const cvec py = heins_tau(nf.family, y, solver_tol);
                const holomorphic_map hy = parameter_increment(nf.family, y, nf.y0);
                values.push_back(euclidean_distance(hy.evaluate(py), hy.evaluate(p0)));
            }
            if (*std::max_element(values.begin(), values.end()) < 1e-13)
                continue; // remainder identically ~0 (parameter enters additively): O(s^2) holds
            for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
                const double slope = (std::log(values[i]) - std::log(values[i + 1])) /
                                     (std::log(ladder[i]) - std::log(ladder[i + 1]));
                if (!(slope > 1.9 && slope < 2.1))
                    return vdetail::fail(id, summary,
                                         nf.name + ": slope " + vdetail::fmt(slope) +
                                             " outside 2 +- 0.1");
                worst_slope_err = std::max(worst_slope_err, std::abs(slope - 2.0));
            }
        } catch (const error& e) {
            return vdetail::fail(id, summary, nf.name + ": " + e.what());
        }
    }
    return vdetail::pass(id, summary,
                         "worst |slope - 2| = " + vdetail::fmt(worst_slope_err) + " <= 0.1");
}

inline check_result heins_first_order_slope(std::uint64_t seed,
                                            const std::vector<named_family>& fams) {
    const std::string id = "heins.first-order-slope";
    const std::string summary = "sup ||h_y|| scales linearly in ||y - y0||";
    auto rng = vdetail::check_rng(seed, id);
    const std::vector<double> ladder = {1e-2, 1e-3, 1e-4};
    double worst_slope_err = 0.0;
    for (const named_family& nf : fams) {
        try {
            const std::size_t m = nf.family.map().param_dim();
            const cvec u = vdetail::random_direction(rng, m);
            std::vector<cvec> sample;
            for (int k = 0; k < 60; ++k)
                sample.push_back(vdetail::random_interior(rng, nf.family.space_domain(), 0.5));
            std::vector<double> values;
            for (double s : ladder) {
                cvec y(nf.y0);
                for (std::size_t j = 0; j < m; ++j) y[j] += s * u[j];
                const holomorphic_map hy = parameter_increment(nf.family, y, nf.y0);
                double sup = 0.0;
                for (const cvec& w : sample) sup = std::max(sup, euclidean_norm(hy.evaluate(w)));
                values.push_back(sup);
            }
            for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
                const double slope = (std::log(values[i]) - std::log(values[i + 1])) /
                                     (std::log(ladder[i]) - std::log(ladder[i + 1]));
                if (!(slope > 0.9 && slope < 1.1))
                    return vdetail::fail(id, summary,
                                         nf.name + ": slope " + vdetail::fmt(slope) +
                                             " outside 1 +- 0.1");
                worst_slope_err = std::max(worst_slope_err, std::abs(slope - 1.0));
            }
        } catch (const error& e) {
            return vdetail::fail(id, summary, nf.name + ": " + e.what());
        }
    }
    return vdetail::pass(id, summary,
                         "worst |slope - 1| = " + vdetail::fmt(worst_slope_err) + " <= 0.1");
}

inline check_result heins_holomorphy(std::uint64_t seed, const std::vector<named_family>& fams) {
    const std::string id = "heins.holomorphy";
    const std::string summary = "the fixed point depends holomorphically on the parameter";
    (void)seed;
    double worst = 0.0;
    for (const named_family& nf : fams) {
        try {
            worst = std::max(worst, wirtinger_antiholomorphic_norm(nf.family, nf.y0, 1e-4));
        } catch (const error& e) {
            return vdetail::fail(id, summary, nf.name + ": " + e.what());
        }
    }
    if (!(worst < 1e-6))
        return vdetail::fail(id, summary,
                             "anti-holomorphic norm " + vdetail::fmt(worst) + " >= 1e-6");
    return vdetail::pass(id, summary,
                         "max anti-holomorphic norm " + vdetail::fmt(worst) + " < 1e-6");
}

inline check_result heins_continuity(std::uint64_t seed, const std::vector<named_family>& fams) {
    const std::string id = "heins.continuity";
    const std::string summary = "fixed-point displacement shrinks with the parameter radius";
    const std::vector<double> radii = {1e-2, 1e-3, 1e-4};
    for (const named_family& nf : fams) {
        try {
            const heins_report rep = heins_differential(nf.family, nf.y0);
            const double dnorm = operator_norm(rep.d_tau);
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < radii.size(); ++i) {
                const double d = perturbation_continuity_probe(
                    nf.family, nf.y0, radii[i], 20, derive_seed(seed, fnv1a64(id) + i));
                if (d > (dnorm + 1.0) * radii[i])
                    return vdetail::fail(id, summary,
                                         nf.name + ": displacement " + vdetail::fmt(d) +
                                             " above (||d_tau|| + 1) * " +
                                             vdetail::fmt(radii[i]));
                if (d > prev)
                    return vdetail::fail(id, summary,
                                         nf.name + ": displacement grew as the radius shrank");
                prev = d;
            }
        } catch (const error& e) {
            return vdetail::fail(id, summary, nf.name + ": " + e.what());
        }
    }
    return vdetail::pass(id, summary,
                         "radii 1e-2, 1e-3, 1e-4: monotone and mean-value bounded");
}

} // namespace checks

// ---------------------------------------------------------------------------
// Drivers

inline verify_report verify_builtin_fixtures(std::uint64_t seed) {
    verify_report report;

    std::vector<checks::named_self_map> self_maps;
    for (fixture_map& f : builtin_fixture_maps()) {
        const bool linear = f.name == "affine" || f.name == "linear2d" || f.name == "rho999";
        self_maps.push_back(
            {f.name, std::move(f.map), std::move(f.domain), {}, f.compact_margin, f.slow, linear});
    }
    std::vector<checks::named_family> families;
    for (fixture_family& f : builtin_fixture_families())
        families.push_back({f.name, std::move(f.family), std::move(f.y0)});
    for (const checks::named_family& nf : families)
        self_maps.push_back({nf.name + "-slice", nf.family.slice(nf.y0),
                             nf.family.space_domain(), {}, 0.01, false, false});

    std::vector<std::string> sources = expression_corpus();
    {
        auto rng = vdetail::check_rng(seed, "expr.source-gen");
        for (int k = 0; k < 10; ++k) {
            random_map_options opts;
            opts.degree = 3;
            opts.with_exp = k % 2 == 0;
            const holomorphic_map map = random_polynomial_map(rng, 1 + k % 2, k % 3 == 0 ? 1 : 0,
                                                              opts);
            for (const expression& e : map.components()) sources.push_back(to_string(e));
        }
    }

    const std::vector<domain_spec> metric_domains = {
        domain_spec::disk({0.2, 0.1}, 1.5),
        domain_spec::ball({cplx{0.0, 0.1}, cplx{-0.1, 0.0}}, 1.2),
        domain_spec::polydisk({cplx{0.1, 0.0}, cplx{0.0, 0.0}}, {1.0, 0.7}),
    };

    const double tol = 1e-10;
    report.checks.push_back(checks::expr_roundtrip(seed, sources));
    report.checks.push_back(checks::expr_cauchy_riemann(seed, sources));
    report.checks.push_back(checks::expr_symbolic_vs_contour(seed));
    report.checks.push_back(checks::domains_metric_axioms(seed, metric_domains));
    report.checks.push_back(checks::domains_normalization(seed, metric_domains));
    report.checks.push_back(checks::domains_contraction(seed, self_maps));
    report.checks.push_back(checks::calculus_factorization_residual(seed, {}));
    report.checks.push_back(checks::calculus_factorization_limit(seed, {}));
    report.checks.push_back(checks::calculus_cauchy_ratio(seed));
    report.checks.push_back(checks::calculus_jacobian_agreement(seed, self_maps, true));
    report.checks.push_back(checks::calculus_spectral_radius_roots(seed));
    report.checks.push_back(checks::dynamics_compact_image(seed, self_maps));
    report.checks.push_back(checks::dynamics_negative_control(seed));
    report.checks.push_back(checks::dynamics_uniqueness(seed, self_maps, tol));
    report.checks.push_back(checks::dynamics_residual(seed, self_maps, tol));
    report.checks.push_back(checks::dynamics_attraction(seed, self_maps, tol));
    report.checks.push_back(checks::dynamics_orbit_contraction(seed, self_maps, tol));
    report.checks.push_back(checks::dynamics_linear_rate(seed, self_maps, tol));
    report.checks.push_back(checks::heins_formula_vs_fd(seed, families, true));
    report.checks.push_back(checks::heins_displacement_identity(seed, families));
    report.checks.push_back(checks::heins_remainder_slope(seed, families));
    report.checks.push_back(checks::heins_first_order_slope(seed, families));
    report.checks.push_back(checks::heins_holomorphy(seed, families));
    report.checks.push_back(checks::heins_continuity(seed, families));

    std::sort(report.checks.begin(), report.checks.end(),
              [](const check_result& a, const check_result& b) { return a.id < b.id; });
    return report;
}

inline verify_report verify_map_definition(const map_definition& def, std::uint64_t seed,
                                           double compact_margin = 0.01) {
    verify_report report;

    const cvec y0 = def.has_params() ? def.param_domain->center() : cvec{};
    checks::named_self_map subject{def.name.empty() ? "map" : def.name,
                                   def.map,
                                   def.domain,
                                   y0,
                                   compact_margin,
                                   false,
                                   false};
    const std::vector<checks::named_self_map> subjects = {subject};

    report.checks.push_back(checks::expr_roundtrip(seed, def.sources));
    report.checks.push_back(checks::expr_cauchy_riemann(seed, def.sources));
    report.checks.push_back(checks::domains_metric_axioms(seed, {def.domain}));
    report.checks.push_back(checks::domains_normalization(seed, {def.domain}));
    report.checks.push_back(checks::domains_contraction(seed, subjects));
    report.checks.push_back(checks::calculus_jacobian_agreement(seed, subjects, false));
    report.checks.push_back(checks::calculus_factorization_residual(seed, subjects));
    report.checks.push_back(checks::calculus_factorization_limit(seed, subjects));

    const check_result compact = checks::dynamics_compact_image(seed, subjects);
    const bool compact_ok = compact.state == check_result::status::pass;
    report.checks.push_back(compact);

    const double tol = 1e-10;
    if (compact_ok) {
        report.checks.push_back(checks::dynamics_uniqueness(seed, subjects, tol));
        report.checks.push_back(checks::dynamics_residual(seed, subjects, tol));
        report.checks.push_back(checks::dynamics_attraction(seed, subjects, tol));
        report.checks.push_back(checks::dynamics_orbit_contraction(seed, subjects, tol));
    } else {
        const char* reason = "compact-image check failed; fixed-point iteration not attempted";
        report.checks.push_back(vdetail::skip("dynamics.uniqueness",
                                              "20 random starts land on the same fixed point",
                                              reason));
        report.checks.push_back(vdetail::skip("dynamics.residual",
                                              "||f(tau) - tau|| <= tol on every successful run",
                                              reason));
        report.checks.push_back(
            vdetail::skip("dynamics.attraction",
                          "spectral radius at the fixed point is strictly below one", reason));
        report.checks.push_back(
            vdetail::skip("dynamics.orbit-contraction",
                          "Kobayashi distance to the fixed point decreases along orbits", reason));
    }

    if (def.has_params()) {
        const char* fam_summary = "family slices stay compact across the parameter domain";
        if (!compact_ok) {
            report.checks.push_back(vdetail::skip("heins.family-compactness", fam_summary,
                                                  "base slice already failed"));
        } else {
            std::optional<parametric_family> family;
            try {
                family.emplace(family_from_definition(def));
                report.checks.push_back(vdetail::pass("heins.family-compactness", fam_summary,
                                                      "sampled parameter slices all compact"));
            } catch (const holc_violation& e) {
                report.checks.push_back(
                    vdetail::fail("heins.family-compactness", fam_summary, e.what()));
            }
            if (family) {
                const std::vector<checks::named_family> fams = {
                    {subject.name, std::move(*family), y0}};
                report.checks.push_back(checks::heins_formula_vs_fd(seed, fams, false));
                report.checks.push_back(checks::heins_displacement_identity(seed, fams));
                report.checks.push_back(checks::heins_remainder_slope(seed, fams));
                report.checks.push_back(checks::heins_first_order_slope(seed, fams));
                report.checks.push_back(checks::heins_holomorphy(seed, fams));
                report.checks.push_back(checks::heins_continuity(seed, fams));
            }
        }
    }

    std::sort(report.checks.begin(), report.checks.end(),
              [](const check_result& a, const check_result& b) { return a.id < b.id; });
    return report;
}

} // namespace heinslab
