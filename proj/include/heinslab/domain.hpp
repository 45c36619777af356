#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heinslab/errors.hpp"
#include "heinslab/rng.hpp"
#include "heinslab/types.hpp"

// Model bounded domains (disk, ball, polydisk) with membership, Euclidean
// boundary distance and closed-form Kobayashi distance. Only domains with a
// closed-form distance are supported, so the contraction property can be
// tested exactly instead of through an estimator.

namespace heinslab {

enum class domain_kind { disk, ball, polydisk };

inline const char* domain_kind_name(domain_kind k) {
    switch (k) {
        case domain_kind::disk: return "disk";
        case domain_kind::ball: return "ball";
        case domain_kind::polydisk: return "polydisk";
    }
    return "?";
}

class domain_spec {
public:
    static domain_spec disk(cplx center, double radius) {
        return domain_spec(domain_kind::disk, {center}, {radius});
    }
    static domain_spec ball(cvec center, double radius) {
        return domain_spec(domain_kind::ball, std::move(center), {radius});
    }
    static domain_spec polydisk(cvec center, std::vector<double> radii) {
        return domain_spec(domain_kind::polydisk, std::move(center), std::move(radii));
    }

    static domain_spec unit_disk() { return disk({0.0, 0.0}, 1.0); }
    static domain_spec unit_ball(std::size_t n) { return ball(cvec(n, {0.0, 0.0}), 1.0); }
    static domain_spec unit_polydisk(std::size_t n) {
        return polydisk(cvec(n, {0.0, 0.0}), std::vector<double>(n, 1.0));
    }

    domain_kind kind() const { return kind_; }
    std::size_t dim() const { return center_.size(); }
    const cvec& center() const { return center_; }
    const std::vector<double>& radii() const { return radii_; }

    /// Radius acting on coordinate j (shared radius for disk/ball).
    double radius_for(std::size_t j) const {
        return kind_ == domain_kind::polydisk ? radii_[j] : radii_[0];
    }

private:
    domain_spec(domain_kind kind, cvec center, std::vector<double> radii)
        : kind_(kind), center_(std::move(center)), radii_(std::move(radii)) {
        if (center_.empty()) throw dimension_mismatch("domain dimension must be >= 1");
        if (kind_ == domain_kind::disk && center_.size() != 1)
            throw dimension_mismatch("a disk is one-dimensional; use ball or polydisk");
        const std::size_t want = kind_ == domain_kind::polydisk ? center_.size() : 1;
        if (radii_.size() != want)
            throw dimension_mismatch("expected " + std::to_string(want) + " radii, got " +
                                     std::to_string(radii_.size()));
        for (double r : radii_)
            if (!(r > 0.0) || !std::isfinite(r))
                throw error("domain radii must be strictly positive and finite");
    }

    domain_kind kind_;
    cvec center_;
    std::vector<double> radii_;
};

namespace detail {

inline void check_dim(const domain_spec& dom, std::span<const cplx> z, const char* who) {
    if (z.size() != dom.dim())
        throw dimension_mismatch(std::string(who) + ": point dimension " +
                                 std::to_string(z.size()) + " != domain dimension " +
                                 std::to_string(dom.dim()));
}

} // namespace detail

/// Euclidean distance from z to the boundary (negative when z is outside).
/// For the polydisk this is the smallest per-coordinate slack.
inline double boundary_distance(const domain_spec& dom, std::span<const cplx> z) {
    detail::check_dim(dom, z, "boundary_distance");
    if (dom.kind() == domain_kind::ball) {
        return dom.radii()[0] - euclidean_distance(z, dom.center());
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z.size(); ++j)
        best = std::min(best, dom.radius_for(j) - std::abs(z[j] - dom.center()[j]));
    return best;
}

/// Strict membership in the domain shrunk by `margin` (per-coordinate for
/// the polydisk, radially for disk and ball).
inline bool contains(const domain_spec& dom, std::span<const cplx> z, double margin = 0.0) {
    detail::check_dim(dom, z, "contains");
    return boundary_distance(dom, z) > margin;
}

namespace detail {

/// Poincare distance on the unit disk.
inline double poincare_unit_disk(cplx a, cplx b) {
    const double num = std::abs(a - b);
    if (num == 0.0) return 0.0;
    const double den = std::abs(cplx{1.0, 0.0} - std::conj(b) * a);
    double ratio = num / den;
    if (ratio >= 1.0) ratio = std::nextafter(1.0, 0.0); // interior points only get here via rounding
    return std::atanh(ratio);
}

} // namespace detail

/// Kobayashi distance between interior points.
///
///   disk:      atanh |(a-b)/(1 - conj(b) a)| after normalizing to the unit disk
///   polydisk:  max over coordinates of the per-coordinate disk distance
///   ball:      atanh sqrt(1 - (1-|u|^2)(1-|v|^2)/|1-<u,v>|^2)
///
/// Symmetric by construction; zero iff the points coincide.
inline double kobayashi_distance(const domain_spec& dom, std::span<const cplx> z,
                                 std::span<const cplx> w) {
    detail::check_dim(dom, z, "kobayashi_distance");
    detail::check_dim(dom, w, "kobayashi_distance");
    if (!contains(dom, z, 0.0) || !contains(dom, w, 0.0))
        throw point_outside_domain("kobayashi_distance needs both points strictly inside");

    bool same = true;
    for (std::size_t j = 0; j < z.size(); ++j)
        if (z[j] != w[j]) same = false;
    if (same) return 0.0;

    switch (dom.kind()) {
        case domain_kind::disk:
        case domain_kind::polydisk: {
            double best = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j) {
                const double r = dom.radius_for(j);
                const cplx a = (z[j] - dom.center()[j]) / r;
                const cplx b = (w[j] - dom.center()[j]) / r;
                best = std::max(best, detail::poincare_unit_disk(a, b));
            }
            return best;
        }
        case domain_kind::ball: {
            const double r = dom.radii()[0];
            cvec u(z.size()), v(w.size());
            for (std::size_t j = 0; j < z.size(); ++j) {
                u[j] = (z[j] - dom.center()[j]) / r;
                v[j] = (w[j] - dom.center()[j]) / r;
            }
            cplx herm{0.0, 0.0};
            for (std::size_t j = 0; j < u.size(); ++j) herm += u[j] * std::conj(v[j]);
            const double a2 = norm_sq(u), b2 = norm_sq(v);
            const double den = std::norm(cplx{1.0, 0.0} - herm);
            double s = 1.0 - (1.0 - a2) * (1.0 - b2) / den;
            s = std::clamp(s, 0.0, std::nextafter(1.0, 0.0));
            return std::atanh(std::sqrt(s));
        }
    }
    return 0.0;
}

/// Deterministic interior samples. With `shell` set, points lie at relative
/// radius >= shell (per coordinate for the polydisk), which is the
/// boundary-sampling mode of the compact-image check. The stream is
/// splitmix64 (see rng.hpp), so identical seeds give identical lists.
inline std::vector<cvec> sample_points(const domain_spec& dom, std::size_t count,
                                       std::uint64_t seed,
                                       std::optional<double> shell = std::nullopt) {
    if (count == 0) throw error("sample_points: count must be >= 1");
    if (shell && (*shell <= 0.0 || *shell >= 1.0))
        throw error("sample_points: shell must lie in (0,1)");

    split_mix64 rng(seed);
    const std::size_t n = dom.dim();
    std::vector<cvec> out;
    out.reserve(count);

    auto disk_coord = [&](std::size_t j) {
        // relative radius: area-uniform sqrt(u) in interior mode, linear in shell mode
        const double u = rng.next_unit();
        const double rel = shell ? (*shell + (1.0 - *shell) * u) : std::sqrt(u);
        const double theta = 2.0 * std::numbers::pi * rng.next_unit();
        return dom.center()[j] + dom.radius_for(j) * rel * cplx{std::cos(theta), std::sin(theta)};
    };

    for (std::size_t k = 0; k < count; ++k) {
        cvec p(n);
        if (dom.kind() == domain_kind::ball && n > 1) {
            // gaussian direction, radius factor u^(1/2n) for uniformity
            std::vector<double> g(2 * n);
            double s = 0.0;
            for (double& x : g) {
                x = rng.next_gaussian();
                s += x * x;
            }
            s = std::sqrt(s);
            if (s == 0.0) s = 1.0;
            const double u = rng.next_unit();
            const double rel = shell ? (*shell + (1.0 - *shell) * u)
                                     : std::pow(u, 1.0 / (2.0 * static_cast<double>(n)));
            for (std::size_t j = 0; j < n; ++j)
                p[j] = dom.center()[j] +
                       dom.radii()[0] * rel * cplx{g[2 * j] / s, g[2 * j + 1] / s};
        } else {
            for (std::size_t j = 0; j < n; ++j) p[j] = disk_coord(j);
        }
        out.push_back(std::move(p));
    }
    return out;
}

/// Deterministic near-boundary probes: for each coordinate direction, the
/// two points at relative radius 1 - 1e-12. The compact-image check feeds
/// these alongside the random shell samples so that maps that press against
/// the boundary (the identity above all) fail for any reasonable margin.
inline std::vector<cvec> near_boundary_probes(const domain_spec& dom) {
    const double rel = 1.0 - 1e-12;
    const std::size_t n = dom.dim();
    std::vector<cvec> out;
    out.reserve(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (double sign : {1.0, -1.0}) {
            cvec p = dom.center();
            p[j] += sign * rel * dom.radius_for(j);
            out.push_back(std::move(p));
        }
    }
    return out;
}

} // namespace heinslab
