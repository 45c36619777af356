#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heinslab/calculus.hpp"
#include "heinslab/domain.hpp"
#include "heinslab/dynamics.hpp"
#include "heinslab/expr.hpp"
#include "heinslab/matrix.hpp"

// Parametric families F(y, z) of self-maps and the sensitivity of their
// fixed point: tau(y) is the unique fixed point of the slice f_y, and its
// differential is
//
//     d_tau = (I - J_space)^{-1} J_param
//
// with both Jacobians taken at (y0, tau(y0)). The inverse exists because the
// attraction certificate puts the spectral radius of J_space below one.
// Independent oracles (central differences, a Wirtinger stencil, a random
// continuity probe) live alongside so the formula never has to be trusted
// blindly.

namespace heinslab {

struct family_options {
    double margin = 0.01;               // compact-image margin required of every sampled slice
    std::size_t image_samples = 128;    // shell samples per slice check
    std::size_t param_samples = 64;     // sampled parameter values at construction
    std::uint64_t seed = 17;            // construction-time sampling seed
};

/// A jointly holomorphic family whose slices f_y are self-maps with
/// relatively compact image. Construction validates the compact-image
/// hypothesis on a seeded sample of parameter values; violations surface the
/// offending parameter as a witness.
class parametric_family {
public:
    parametric_family(holomorphic_map map, domain_spec space_domain, domain_spec param_domain,
                      family_options opts = {})
        : map_(std::move(map)),
          space_(std::move(space_domain)),
          params_(std::move(param_domain)),
          opts_(opts) {
        if (map_.param_dim() == 0)
            throw dimension_mismatch("parametric_family: the map declares no parameters");
        if (map_.param_dim() != params_.dim())
            throw dimension_mismatch("parametric_family: parameter domain dimension mismatch");
        if (map_.space_dim() != space_.dim())
            throw dimension_mismatch("parametric_family: space domain dimension mismatch");
        validate_compactness();
    }

    const holomorphic_map& map() const { return map_; }
    const domain_spec& space_domain() const { return space_; }
    const domain_spec& param_domain() const { return params_; }
    const family_options& options() const { return opts_; }

    /// The slice f_y as a parameter-free map.
    holomorphic_map slice(std::span<const cplx> y) const { return map_.bind_params(y); }

private:
    void validate_compactness() const {
        std::vector<cvec> ys = sample_points(params_, opts_.param_samples, opts_.seed);
        ys.push_back(params_.center());
        std::vector<cvec> shell_probes = near_boundary_probes(params_);
        // pull the probes just inside so slices at extreme parameters get seen too
        for (cvec& y : shell_probes)
            for (std::size_t j = 0; j < y.size(); ++j)
                y[j] = params_.center()[j] + (y[j] - params_.center()[j]) * 0.999;
        ys.insert(ys.end(), shell_probes.begin(), shell_probes.end());

        for (const cvec& y : ys) {
            try {
                const compact_image_report rep = check_compact_image(
                    map_, space_, y, opts_.margin, opts_.image_samples, derive_seed(opts_.seed, 2));
                if (!rep.is_compact)
                    throw holc_violation(
                        "family slice is not relatively compact at margin " +
                            std::to_string(opts_.margin) + " (min image margin " +
                            std::to_string(rep.min_boundary_margin) + ")",
                        rep.witness.value_or(cvec{}), y);
            } catch (const evaluation_failure& e) {
                throw holc_violation(std::string("family slice is not a self-map: ") + e.what(),
                                     e.witness, y);
            }
        }
    }

    holomorphic_map map_;
    domain_spec space_;
    domain_spec params_;
    family_options opts_;
};

struct heins_report {
    cvec y0;
    cvec tau;
    complex_matrix d_tau;     // n x m sensitivity of the fixed point
    complex_matrix jac_space; // d f_{y0} at tau
    complex_matrix jac_param; // parameter block of dF at (y0, tau)
    double spectral_radius = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0;
    std::optional<complex_matrix> fd_dtau;
    std::optional<double> fd_agreement; // max entrywise |d_tau - fd_dtau|
};

/// tau(f_y): the fixed point of the slice at y, iterated from the domain center.
inline cvec heins_tau(const parametric_family& family, std::span<const cplx> y,
                      double tol = 1e-10, std::size_t max_iter = 100000) {
    if (!contains(family.param_domain(), y, 0.0))
        throw point_outside_domain("heins_tau: parameter outside the parameter domain");
    const fixed_point_result r =
        iterate_to_fixed_point(family.map(), family.space_domain(), y,
                               family.space_domain().center(), tol, max_iter);
    return r.fixed_point;
}

/// Fixed point plus its exact sensitivity at y0.
inline heins_report heins_differential(const parametric_family& family, std::span<const cplx> y0,
                                       double tol = 1e-10) {
    if (!contains(family.param_domain(), y0, 0.0))
        throw point_outside_domain("heins_differential: y0 outside the parameter domain");

    const fixed_point_result fp =
        iterate_to_fixed_point(family.map(), family.space_domain(), y0,
                               family.space_domain().center(), tol);

    heins_report report;
    report.y0.assign(y0.begin(), y0.end());
    report.tau = fp.fixed_point;
    report.iterations = fp.iterations;
    report.residual = fp.residual;
    report.jac_space = jacobian_symbolic(family.map(), report.tau, y0, jacobian_block::space);
    report.jac_param = jacobian_symbolic(family.map(), report.tau, y0, jacobian_block::params);
    report.spectral_radius = spectral_radius(report.jac_space);
    if (report.spectral_radius >= 1.0)
        throw error("heins_differential: attraction certificate failed (spectral radius " +
                    std::to_string(report.spectral_radius) + " >= 1)");

    const std::size_t n = family.map().space_dim();
    try {
        report.d_tau = solve(complex_matrix::identity(n) - report.jac_space, report.jac_param);
    } catch (const singular_matrix&) {
        // unreachable once the spectral radius is below one
        throw singular_matrix(
            "heins_differential: I - J_space singular despite spectral radius < 1 "
            "(internal inconsistency)");
    }
    return report;
}

/// Central-difference oracle: column j is (tau(y0 + s e_j) - tau(y0 - s e_j)) / 2s.
/// Solves at an internally tightened tolerance so the O(tol/step) solver
/// noise stays far below the O(step^2) truncation term.
inline complex_matrix finite_difference_dtau(const parametric_family& family,
                                             std::span<const cplx> y0, double step = 1e-4) {
    if (!(step > 0.0)) throw error("finite_difference_dtau: step must be positive");
    const std::size_t n = family.map().space_dim();
    const std::size_t m = family.map().param_dim();
    const double solver_tol = 1e-12;

    complex_matrix fd(n, m);
    cvec yp(y0.begin(), y0.end()), ym(y0.begin(), y0.end());
    for (std::size_t j = 0; j < m; ++j) {
        yp[j] = y0[j] + step;
        ym[j] = y0[j] - step;
        if (!contains(family.param_domain(), yp, 0.0) ||
            !contains(family.param_domain(), ym, 0.0))
            throw point_outside_domain("finite_difference_dtau: stencil leaves the parameter domain");
        const cvec tp = heins_tau(family, yp, solver_tol);
        const cvec tm = heins_tau(family, ym, solver_tol);
        for (std::size_t i = 0; i < n; ++i) fd.at(i, j) = (tp[i] - tm[i]) / (2.0 * step);
        yp[j] = y0[j];
        ym[j] = y0[j];
    }
    return fd;
}

/// Numerical Wirtinger derivative of tau with respect to conj(y), per
/// parameter coordinate:
///   (tau(y0+h) - tau(y0-h) + i tau(y0+ih) - i tau(y0-ih)) / 4h.
/// Vanishes (to stencil order) exactly when tau is holomorphic; returns the
/// largest coordinate estimate in Euclidean norm.
inline double wirtinger_antiholomorphic_norm(const parametric_family& family,
                                             std::span<const cplx> y0, double step = 1e-4) {
    if (!(step > 0.0)) throw error("wirtinger_antiholomorphic_norm: step must be positive");
    const std::size_t n = family.map().space_dim();
    const std::size_t m = family.map().param_dim();
    const double solver_tol = 1e-12;

    double worst = 0.0;
    cvec y(y0.begin(), y0.end());
    for (std::size_t j = 0; j < m; ++j) {
        const cplx base = y0[j];
        const cplx offsets[4] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
        cvec taus[4];
        for (int s = 0; s < 4; ++s) {
            y[j] = base + offsets[s];
            if (!contains(family.param_domain(), y, 0.0))
                throw point_outside_domain(
                    "wirtinger_antiholomorphic_norm: stencil leaves the parameter domain");
            taus[s] = heins_tau(family, y, solver_tol);
        }
        y[j] = base;
        cvec est(n);
        const cplx i_unit{0.0, 1.0};
        for (std::size_t c = 0; c < n; ++c)
            est[c] = (taus[0][c] - taus[1][c] + i_unit * taus[2][c] - i_unit * taus[3][c]) /
                     (4.0 * step);
        worst = std::max(worst, euclidean_norm(est));
    }
    return worst;
}

/// Max displacement of tau over random parameters in the ball of `radius`
/// around y0; shrinking radii drive this to zero when tau is continuous.
inline double perturbation_continuity_probe(const parametric_family& family,
                                            std::span<const cplx> y0, double radius,
                                            std::size_t trials, std::uint64_t seed) {
    if (radius < 0.0) throw error("perturbation_continuity_probe: radius must be >= 0");
    if (radius == 0.0) return 0.0;
    if (!contains(family.param_domain(), y0, radius))
        throw point_outside_domain(
            "perturbation_continuity_probe: the probe ball leaves the parameter domain");

    const std::size_t m = family.map().param_dim();
    const cvec tau0 = heins_tau(family, y0);
    split_mix64 rng(seed);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        // uniform in the Euclidean ball of real dimension 2m
        std::vector<double> g(2 * m);
        double s = 0.0;
        for (double& x : g) {
            x = rng.next_gaussian();
            s += x * x;
        }
        s = std::sqrt(s);
        if (s == 0.0) s = 1.0;
        const double rel = std::pow(rng.next_unit(), 1.0 / (2.0 * static_cast<double>(m)));
        cvec y(y0.begin(), y0.end());
        for (std::size_t j = 0; j < m; ++j)
            y[j] += radius * rel * cplx{g[2 * j] / s, g[2 * j + 1] / s};
        const cvec tau = heins_tau(family, y);
        worst = std::max(worst, euclidean_distance(tau, tau0));
    }
    return worst;
}

/// The parameter increment h_y = f_y - f_{y0} as a parameter-free map.
inline holomorphic_map parameter_increment(const parametric_family& family,
                                           std::span<const cplx> y, std::span<const cplx> y0) {
    return map_difference(family.map().bind_params(y), family.map().bind_params(y0));
}

} // namespace heinslab
