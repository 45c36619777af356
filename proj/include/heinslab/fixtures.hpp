#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "heinslab/domain.hpp"
#include "heinslab/expr.hpp"
#include "heinslab/heins.hpp"
#include "heinslab/rng.hpp"

// Built-in fixture maps and families with closed-form fixed points, plus
// seeded generators of random holomorphic maps. Generated self-maps are
// normalized so the coefficient moduli sum to at most 0.8, which bounds the
// image inside the 0.8-polydisk and certifies the compact-image hypothesis
// by construction.

namespace heinslab {

struct fixture_map {
    std::string name;
    holomorphic_map map;
    domain_spec domain;
    double compact_margin;  // margin the fixture is expected to clear
    bool slow;              // contraction rate near one: convergence-only checks
};

struct fixture_family {
    std::string name;
    parametric_family family;
    cvec y0;
};

inline std::vector<fixture_map> builtin_fixture_maps() {
    std::vector<fixture_map> out;
    out.push_back({"affine", parse_map({"0.3 + 0.4*z1"}, 1, 0), domain_spec::unit_disk(), 0.05,
                   false});
    out.push_back({"linear2d", parse_map({"0.5*z2", "0.25*z1 + 0.1"}, 2, 0),
                   domain_spec::unit_polydisk(2), 0.05, false});
    out.push_back({"quadratic-slice", parse_map({"z1^2/4"}, 1, 0), domain_spec::unit_disk(), 0.5,
                   false});
    out.push_back({"constant", parse_map({"0.1 + 0.2i"}, 1, 0), domain_spec::unit_disk(), 0.5,
                   false});
    // contraction rate 0.999: exercises the iteration budget
    out.push_back({"rho999", parse_map({"0.999*z1"}, 1, 0), domain_spec::unit_disk(), 5e-4,
                   true});
    return out;
}

inline std::vector<fixture_family> builtin_fixture_families() {
    std::vector<fixture_family> out;
    out.push_back({"quadratic-family",
                   parametric_family(parse_map({"(z1^2 + y1)/4"}, 1, 1),
                                     domain_spec::unit_disk(), domain_spec::unit_disk()),
                   {cplx{0.0, 0.0}}});
    out.push_back({"affine-family",
                   parametric_family(parse_map({"0.3 + y1*z1"}, 1, 1), domain_spec::unit_disk(),
                                     domain_spec::disk({0.0, 0.0}, 0.65)),
                   {cplx{0.5, 0.0}}});
    out.push_back({"constants-family",
                   parametric_family(parse_map({"y1"}, 1, 1), domain_spec::unit_disk(),
                                     domain_spec::disk({0.0, 0.0}, 0.9)),
                   {cplx{0.25, 0.25}}});
    return out;
}

/// Expression corpus exercised by the grammar invariants.
inline std::vector<std::string> expression_corpus() {
    return {
        "0.5*z1 + 0.1i",
        "(z1^2 + y1)/4",
        "exp(z1)/4",
        "0.3 + 0.4*z1",
        "sin(z1)*cos(z1) - 0.25i",
        "(1+2i)*z1^3 - z1/(2 + z1)",
        "-z1^2 + exp(0.3*z1)",
        "0.25*z1*z2 + 0.1*z2^2",
        "cos(z1 + 0.5i*z2)/3",
        "y1*z1 + y2*z2^2 - 0.125",
    };
}

namespace detail {

/// Multi-indices with total degree <= degree over `vars` variables.
inline std::vector<std::vector<unsigned>> multi_indices(std::size_t vars, unsigned degree) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(vars, 0);
    auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
        if (pos == vars) {
            out.push_back(cur);
            return;
        }
        for (unsigned d = 0; d <= left; ++d) {
            cur[pos] = d;
            self(self, pos + 1, left - d);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, degree);
    return out;
}

inline expr_ptr monomial(cplx coef, const std::vector<unsigned>& zdeg,
                         const std::vector<unsigned>& ydeg) {
    expr_ptr term = make_literal(coef);
    for (std::size_t j = 0; j < zdeg.size(); ++j)
        if (zdeg[j] > 0) term = make_mul(term, make_pow(make_variable(var_group::space, j), zdeg[j]));
    for (std::size_t j = 0; j < ydeg.size(); ++j)
        if (ydeg[j] > 0) term = make_mul(term, make_pow(make_variable(var_group::param, j), ydeg[j]));
    return term;
}

} // namespace detail

struct random_map_options {
    unsigned degree = 3;
    double sup_bound = 0.0; // > 0: scale coefficient moduli to sum to this bound
    bool with_exp = false;  // append a scaled exp(b z_j) term
};

/// Random polynomial (optionally + exp) map in n space and m parameter
/// variables. With sup_bound > 0 the coefficient moduli are normalized so
/// the image of the unit polydisk stays inside the sup_bound-polydisk for
/// every parameter of modulus < 1.
inline holomorphic_map random_polynomial_map(split_mix64& rng, std::size_t n, std::size_t m,
                                             random_map_options opts = {}) {
    const auto indices = detail::multi_indices(n + m, opts.degree);
    std::vector<expression> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<cplx> coefs(indices.size());
        double coef_sum = 0.0;
        for (cplx& c : coefs) {
            c = 0.5 * rng.next_complex_box();
            coef_sum += std::abs(c);
        }
        cplx exp_coef{0.0, 0.0};
        cplx exp_rate{0.0, 0.0};
        std::size_t exp_var = 0;
        if (opts.with_exp) {
            exp_coef = 0.25 * rng.next_complex_box();
            exp_rate = 0.5 * rng.next_complex_box();
            exp_var = static_cast<std::size_t>(rng.next_u64() % n);
            coef_sum += std::abs(exp_coef) * std::exp(std::abs(exp_rate));
        }
        double scale = 1.0;
        if (opts.sup_bound > 0.0 && coef_sum > opts.sup_bound) scale = opts.sup_bound / coef_sum;

        expr_ptr body = make_literal({0.0, 0.0});
        for (std::size_t t = 0; t < indices.size(); ++t) {
            std::vector<unsigned> zdeg(indices[t].begin(), indices[t].begin() + n);
            std::vector<unsigned> ydeg(indices[t].begin() + n, indices[t].end());
            body = make_add(body, detail::monomial(coefs[t] * scale, zdeg, ydeg));
        }
        if (opts.with_exp) {
            expr_ptr arg = make_mul(make_literal(exp_rate), make_variable(var_group::space, exp_var));
            body = make_add(body, make_mul(make_literal(exp_coef * scale),
                                           make_call(func_kind::exp_fn, std::move(arg))));
        }
        comps.emplace_back(std::move(body));
    }
    return holomorphic_map(std::move(comps), n, m);
}

/// Random self-map family on the unit (poly)disk with certified compact
/// image: the sup bound 0.8 leaves margin 0.2 for every parameter.
inline parametric_family random_polynomial_family(split_mix64& rng, std::size_t n, std::size_t m,
                                                  unsigned degree = 3) {
    random_map_options opts;
    opts.degree = degree;
    opts.sup_bound = 0.8;
    holomorphic_map map = random_polynomial_map(rng, n, m, opts);
    family_options fam;
    fam.margin = 0.05;
    fam.image_samples = 100;
    fam.param_samples = 12;
    fam.seed = rng.next_u64();
    const domain_spec space =
        n == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(n);
    const domain_spec params =
        m == 1 ? domain_spec::unit_disk() : domain_spec::unit_polydisk(m);
    return parametric_family(std::move(map), space, params, fam);
}

/// Identity map fixture: the canonical map that is *not* in the
/// compact-image class; used as the negative control.
inline holomorphic_map identity_map(std::size_t n) {
    std::vector<std::string> sources;
    for (std::size_t i = 1; i <= n; ++i) sources.push_back("z" + std::to_string(i));
    return parse_map(sources, n, 0);
}

} // namespace heinslab
