#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heinslab/calculus.hpp"
#include "heinslab/domain.hpp"
#include "heinslab/expr.hpp"

// Plain fixed-point iteration z_{k+1} = f(z_k) with a two-sided stopping
// rule, an attraction certificate from the Jacobian's spectral radius, and a
// sampling-based check that f presses the domain strictly into itself.
// Iteration is deliberately unaccelerated: the iterate sequence itself is
// the object of interest.

namespace heinslab {

struct fixed_point_result {
    cvec fixed_point;
    std::size_t iterations = 0;
    double residual = 0.0; // ||f(tau) - tau||_2
    std::optional<std::vector<cvec>> orbit;
    double spectral_radius = 0.0; // of the Jacobian at the fixed point
    bool converged = false;
};

struct compact_image_report {
    bool is_compact = false;
    double min_boundary_margin = 0.0;
    std::size_t samples_used = 0;
    std::optional<cvec> witness; // sample whose image is nearest the boundary
};

/// Samples the map on near-boundary shell points (relative radius >= 0.99),
/// interior points, and fixed axis probes at relative radius 1 - 1e-12, and
/// reports the smallest Euclidean boundary margin of the image. This is
/// sampling evidence for a relatively compact image, not a proof: a pass
/// says no sampled point came closer to the boundary than `margin`.
///
/// Throws evaluation_failure (with the offending sample as witness) if an
/// image point falls outside the domain, i.e. the map is not a self-map.
inline compact_image_report check_compact_image(const holomorphic_map& map,
                                                const domain_spec& dom,
                                                std::span<const cplx> y, double margin,
                                                std::size_t samples, std::uint64_t seed) {
    if (samples < 100) throw error("check_compact_image: need at least 100 samples");
    if (!(margin > 0.0)) throw error("check_compact_image: margin must be positive");
    if (map.space_dim() != dom.dim())
        throw dimension_mismatch("check_compact_image: map/domain dimension mismatch");

    std::vector<cvec> points = sample_points(dom, samples, seed, 0.99);
    {
        std::vector<cvec> interior = sample_points(dom, std::max<std::size_t>(1, samples / 2),
                                                   derive_seed(seed, 1), std::nullopt);
        points.insert(points.end(), interior.begin(), interior.end());
        std::vector<cvec> probes = near_boundary_probes(dom);
        points.insert(points.end(), probes.begin(), probes.end());
    }

    compact_image_report report;
    report.samples_used = points.size();
    report.min_boundary_margin = std::numeric_limits<double>::infinity();
    for (const cvec& p : points) {
        const cvec image = map.evaluate(p, y);
        const double bd = boundary_distance(dom, image);
        if (bd <= 0.0)
            throw evaluation_failure("image point left the domain: not a self-map", p);
        if (bd < report.min_boundary_margin) {
            report.min_boundary_margin = bd;
            report.witness = p;
        }
    }
    report.is_compact = report.min_boundary_margin >= margin;
    return report;
}

/// Iterates z_{k+1} = f(z_k) from `start` until both the step size
/// ||z_{k+1} - z_k|| and the residual ||f(z_{k+1}) - z_{k+1}|| fall below
/// `tol`. On success the spectral radius of the symbolic Jacobian at the
/// fixed point is attached as the attraction certificate, and `converged`
/// additionally asserts that certificate is < 1.
inline fixed_point_result iterate_to_fixed_point(const holomorphic_map& map,
                                                 const domain_spec& dom,
                                                 std::span<const cplx> y,
                                                 std::span<const cplx> start, double tol = 1e-10,
                                                 std::size_t max_iter = 100000,
                                                 bool record_orbit = false) {
    if (!(tol > 0.0)) throw error("iterate_to_fixed_point: tol must be positive");
    if (!contains(dom, start, 0.0))
        throw point_outside_domain("iterate_to_fixed_point: start must lie strictly inside");

    fixed_point_result result;
    if (record_orbit) result.orbit.emplace();

    cvec cur(start.begin(), start.end());
    cvec next = map.evaluate(cur, y); // z_1
    for (std::size_t k = 1; k <= max_iter; ++k) {
        if (!contains(dom, next, 0.0)) throw iterate_left_domain(k, next);
        if (record_orbit) result.orbit->push_back(next);

        const double step = euclidean_distance(next, cur);
        const cvec lookahead = map.evaluate(next, y); // f(z_k), reused as z_{k+1}
        const double residual = euclidean_distance(lookahead, next);
        if (step < tol && residual < tol) {
            result.fixed_point = next;
            result.iterations = k;
            result.residual = residual;
            result.spectral_radius =
                spectral_radius(jacobian_symbolic(map, result.fixed_point, y));
            result.converged = result.spectral_radius < 1.0;
            return result;
        }
        cur = std::move(next);
        next = lookahead;
    }
    throw max_iterations_exceeded(max_iter, next,
                                  euclidean_distance(map.evaluate(next, y), next));
}

/// First `count` iterates f(start), f^2(start), ... stopping with
/// iterate_left_domain if the orbit escapes.
inline std::vector<cvec> orbit_trace(const holomorphic_map& map, const domain_spec& dom,
                                     std::span<const cplx> y, std::span<const cplx> start,
                                     std::size_t count) {
    if (count == 0) throw error("orbit_trace: count must be >= 1");
    if (!contains(dom, start, 0.0))
        throw point_outside_domain("orbit_trace: start must lie strictly inside");
    std::vector<cvec> orbit;
    orbit.reserve(count);
    cvec cur(start.begin(), start.end());
    for (std::size_t k = 1; k <= count; ++k) {
        cur = map.evaluate(cur, y);
        if (!contains(dom, cur, 0.0)) throw iterate_left_domain(k, cur);
        orbit.push_back(cur);
    }
    return orbit;
}

} // namespace heinslab
