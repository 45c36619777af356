#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "heinslab/domain.hpp"
#include "heinslab/expr.hpp"
#include "heinslab/matrix.hpp"
#include "heinslab/rng.hpp"

// Numerical complex calculus: Cauchy-integral Jacobians cross-checkable
// against exact symbolic ones, spectral radius for the attraction
// certificate, and the segment factorization h(z)-h(p0) = A(z)(z-p0) with
// A obtained by integrating the Jacobian along the straight segment.

namespace heinslab {

enum class jacobian_block { space, params };

/// Exact Jacobian from symbolic partials, evaluated at (z, y).
/// wrt=space gives the n x n block, wrt=params the n x m block.
inline complex_matrix jacobian_symbolic(const holomorphic_map& map, std::span<const cplx> z,
                                        std::span<const cplx> y = {},
                                        jacobian_block wrt = jacobian_block::space) {
    const std::size_t n = map.space_dim();
    const std::size_t cols = wrt == jacobian_block::space ? n : map.param_dim();
    const var_group g = wrt == jacobian_block::space ? var_group::space : var_group::param;
    if (z.size() != n || y.size() != map.param_dim())
        throw dimension_mismatch("jacobian_symbolic: point shape mismatch");
    complex_matrix out(n, cols);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            out.at(i, j) = symbolic_partial(map.components()[i], g, j).evaluate(z, y);
    if (!out.finite()) throw numeric_overflow("jacobian_symbolic: non-finite entry");
    return out;
}

/// Trapezoid rule on the Cauchy integral for each partial:
///   entry (i,j) = (1/N) sum_k f_i(z + r e^{i theta_k} e_j) e^{-i theta_k} / r
/// over equispaced theta_k. Spectrally accurate for entire components. The
/// per-coordinate circles of radius r around z must stay inside `dom`.
inline complex_matrix jacobian_contour(const holomorphic_map& map, const domain_spec& dom,
                                       std::span<const cplx> z, std::span<const cplx> y,
                                       double radius, std::size_t nodes) {
    const std::size_t n = map.space_dim();
    if (z.size() != n) throw dimension_mismatch("jacobian_contour: point shape mismatch");
    if (nodes < 8) throw error("jacobian_contour: nodes must be >= 8");
    if (!(radius > 0.0)) throw error("jacobian_contour: radius must be positive");

    // circle containment: perturbing coordinate j leaves the other coordinates fixed
    if (!contains(dom, z, 0.0))
        throw circle_leaves_domain("jacobian_contour: base point outside the domain");
    if (dom.kind() == domain_kind::ball) {
        if (euclidean_distance(z, dom.center()) + radius >= dom.radii()[0])
            throw circle_leaves_domain("jacobian_contour: contour circle leaves the ball");
    } else {
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(z[j] - dom.center()[j]) + radius >= dom.radius_for(j))
                throw circle_leaves_domain("jacobian_contour: contour circle leaves coordinate " +
                                           std::to_string(j + 1));
    }

    complex_matrix out(n, n);
    cvec point(z.begin(), z.end());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < nodes; ++k) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                                 static_cast<double>(nodes);
            const cplx rot{std::cos(theta), std::sin(theta)};
            point[j] = z[j] + radius * rot;
            const cvec w = map.evaluate(point, y);
            const cplx weight = std::conj(rot) / (radius * static_cast<double>(nodes));
            for (std::size_t i = 0; i < n; ++i) out.at(i, j) += w[i] * weight;
        }
        point[j] = z[j];
    }
    if (!out.finite()) throw numeric_overflow("jacobian_contour: non-finite entry");
    return out;
}

/// Default contour radius at z: half the Euclidean boundary clearance, capped at 0.5.
inline double default_contour_radius(const domain_spec& dom, std::span<const cplx> z) {
    return std::min(0.5, 0.5 * boundary_distance(dom, z));
}

// ---------------------------------------------------------------------------
// Spectral radius: Gelfand iteration rho ~ ||M^(2^k)||^(1/2^k) via repeated
// squaring with log-norm accumulation; each norm is itself a power iteration
// on A^H A with three seeded restarts (operator_norm). ||M^N||^(1/N)
// decreases monotonically to rho, and errors in early log terms damp as
// 2^-k, so 64 squarings put the estimate within ~1e-12 of rho for the
// n <= 8 matrices this library produces (documented tolerance 1e-9).

inline double spectral_radius(const complex_matrix& m) {
    if (!m.square()) throw non_square("spectral_radius needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 0.0;
    if (!m.finite()) throw numeric_overflow("spectral_radius: non-finite entry");
    if (n == 1) return std::abs(m.at(0, 0));

    const double norm0 = operator_norm(m);
    if (norm0 == 0.0) return 0.0;

    complex_matrix u = m;
    double log_norm = std::log(norm0); // log ||M^(2^k)||, k = 0
    u.scale(1.0 / norm0);
    double est = norm0;
    for (int k = 1; k <= 64; ++k) {
        complex_matrix sq = u * u;
        const double ns = operator_norm(sq);
        if (ns == 0.0) return 0.0; // nilpotent
        log_norm = 2.0 * log_norm + std::log(ns);
        const double next = std::exp(log_norm / std::pow(2.0, k));
        const bool settled = std::abs(next - est) <= 1e-13 * std::max(1.0, est);
        est = next;
        u = sq;
        u.scale(1.0 / ns);
        if (settled && k >= 8) break;
    }
    return est;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature on [0, 1]

/// Nodes and weights on [0,1]; Newton iteration on the Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(std::size_t n) {
    if (n == 0) throw error("gauss_legendre: need at least one node");
    std::vector<double> x(n), w(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Chebyshev-based initial guess, then Newton on P_n
        double t = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double p = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (std::size_t j = 2; j <= n; ++j) {
                const double pj = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = pj;
            }
            p = p1;
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double step = p / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        x[k] = 0.5 * (t + 1.0);
        w[k] = 1.0 / ((1.0 - t * t) * dp * dp); // = (2 / ((1-t^2) P'^2)) / 2 for [0,1]
    }
    return {std::move(x), std::move(w)};
}

// ---------------------------------------------------------------------------
// Segment factorization: A_ij(z) = int_0^1 dh_i/dz_j (p0 + t (z - p0)) dt,
// so that h(z) - h(p0) = A(z) (z - p0), with A(p0) equal to the Jacobian at
// p0. Model domains are convex, so the segment stays inside whenever both
// endpoints do. The integrand is analytic in t; Gauss-Legendre converges
// geometrically and the default 32 nodes saturate double precision for the
// component degrees used here.

inline complex_matrix segment_factorization(const holomorphic_map& h, std::span<const cplx> p0,
                                            std::span<const cplx> z, std::size_t quad_nodes = 32) {
    const std::size_t n = h.space_dim();
    if (p0.size() != n || z.size() != n)
        throw dimension_mismatch("segment_factorization: point shape mismatch");
    if (h.param_dim() != 0)
        throw dimension_mismatch("segment_factorization: bind parameters first");
    if (quad_nodes < 4) throw error("segment_factorization: quad_nodes must be >= 4");

    std::vector<std::vector<expression>> partials(n);
    for (std::size_t i = 0; i < n; ++i) {
        partials[i].reserve(n);
        for (std::size_t j = 0; j < n; ++j)
            partials[i].push_back(symbolic_partial(h.components()[i], var_group::space, j));
    }

    const auto [nodes, weights] = gauss_legendre(quad_nodes);
    complex_matrix a(n, n);
    cvec point(n);
    for (std::size_t q = 0; q < quad_nodes; ++q) {
        const double t = nodes[q];
        for (std::size_t j = 0; j < n; ++j) point[j] = p0[j] + t * (z[j] - p0[j]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a.at(i, j) += weights[q] * partials[i][j].evaluate(point, {});
    }
    if (!a.finite()) throw numeric_overflow("segment_factorization: non-finite entry");
    return a;
}

} // namespace heinslab
