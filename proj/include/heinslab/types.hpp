#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace heinslab {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline double norm_sq(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& c : v) s += std::norm(c);
    return s;
}

/// Euclidean (l2) norm of a complex vector.
inline double euclidean_norm(std::span<const cplx> v) { return std::sqrt(norm_sq(v)); }

inline double euclidean_distance(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

inline bool all_finite(std::span<const cplx> v) {
    for (const cplx& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

inline cvec vec_sub(std::span<const cplx> a, std::span<const cplx> b) {
    cvec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline cvec vec_add(std::span<const cplx> a, std::span<const cplx> b) {
    cvec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline cvec vec_scale(std::span<const cplx> a, cplx s) {
    cvec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

} // namespace heinslab
