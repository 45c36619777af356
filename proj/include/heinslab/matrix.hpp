#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "heinslab/errors.hpp"
#include "heinslab/rng.hpp"
#include "heinslab/types.hpp"

namespace heinslab {

/// Dense row-major complex matrix. Dimensions here are tiny (Jacobians of
/// maps in a handful of variables), so everything is plain O(n^3) code with
/// no external linear-algebra dependency.
class complex_matrix {
public:
    complex_matrix() = default;
    complex_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

    static complex_matrix identity(std::size_t n) {
        complex_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return entries_; }

    bool finite() const { return all_finite(entries_); }

    void scale(double s) {
        for (cplx& e : entries_) e *= s;
    }

    friend complex_matrix operator+(const complex_matrix& a, const complex_matrix& b) {
        complex_matrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < out.entries_.size(); ++k)
            out.entries_[k] = a.entries_[k] + b.entries_[k];
        return out;
    }

    friend complex_matrix operator-(const complex_matrix& a, const complex_matrix& b) {
        complex_matrix out(a.rows_, a.cols_);
        for (std::size_t k = 0; k < out.entries_.size(); ++k)
            out.entries_[k] = a.entries_[k] - b.entries_[k];
        return out;
    }

    friend complex_matrix operator*(const complex_matrix& a, const complex_matrix& b) {
        complex_matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a.at(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += aik * b.at(k, j);
            }
        return out;
    }

    friend cvec operator*(const complex_matrix& a, const cvec& v) {
        cvec out(a.rows_, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a.at(i, j) * v[j];
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

inline double frobenius_norm(const complex_matrix& m) { return euclidean_norm(m.entries()); }

inline double max_abs_entry(const complex_matrix& m) {
    double v = 0.0;
    for (const cplx& e : m.entries()) v = std::max(v, std::abs(e));
    return v;
}

inline double max_abs_diff(const complex_matrix& a, const complex_matrix& b) {
    double v = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            v = std::max(v, std::abs(a.at(i, j) - b.at(i, j)));
    return v;
}

/// Operator 2-norm: power iteration on A^H A from three seeded restarts,
/// keeping the largest Rayleigh estimate. Converges to ~1e-13 relative for
/// the small matrices used here.
inline double operator_norm(const complex_matrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    if (nr == 0 || nc == 0) return 0.0;
    if (nr == 1 && nc == 1) return std::abs(m.at(0, 0));
    if (frobenius_norm(m) == 0.0) return 0.0;

    double best = 0.0;
    for (std::uint64_t restart = 0; restart < 3; ++restart) {
        split_mix64 rng(0x5eedULL + restart);
        cvec v(nc);
        for (cplx& c : v) c = rng.next_complex_box();
        double sigma_sq = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            // w = A^H (A v)
            cvec av(nr, cplx{0.0, 0.0});
            for (std::size_t i = 0; i < nr; ++i)
                for (std::size_t j = 0; j < nc; ++j) av[i] += m.at(i, j) * v[j];
            cvec w(nc, cplx{0.0, 0.0});
            for (std::size_t j = 0; j < nc; ++j)
                for (std::size_t i = 0; i < nr; ++i) w[j] += std::conj(m.at(i, j)) * av[i];
            const double nw = euclidean_norm(w);
            const double nv = euclidean_norm(v);
            if (nw == 0.0 || nv == 0.0) {
                sigma_sq = 0.0;
                break;
            }
            const double next = nw / nv; // Rayleigh estimate of sigma_max^2
            const bool settled = std::abs(next - sigma_sq) <= 1e-15 * std::max(1.0, next);
            sigma_sq = next;
            for (std::size_t j = 0; j < nc; ++j) v[j] = w[j] / nw;
            if (settled && iter > 4) break;
        }
        best = std::max(best, sigma_sq);
    }
    return std::sqrt(best);
}

namespace detail {

// LU factorization with partial pivoting, in place. Returns the permutation.
inline std::vector<std::size_t> lu_factor(complex_matrix& a) {
    if (!a.square()) throw non_square("matrix must be square");
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a.at(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < 1e-13)
            throw singular_matrix("pivot below 1e-13 during elimination");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(col, j), a.at(pivot, j));
            std::swap(perm[col], perm[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a.at(r, col) / a.at(col, col);
            a.at(r, col) = f;
            for (std::size_t j = col + 1; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
        }
    }
    return perm;
}

inline cvec lu_solve(const complex_matrix& lu, const std::vector<std::size_t>& perm,
                     const cvec& rhs) {
    const std::size_t n = lu.rows();
    cvec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= lu.at(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu.at(ii, j) * x[j];
        x[ii] /= lu.at(ii, ii);
    }
    return x;
}

} // namespace detail

/// Solves a x = rhs by Gaussian elimination with partial pivoting.
/// Throws singular_matrix when a pivot falls below 1e-13 in modulus.
inline cvec solve(const complex_matrix& a, const cvec& rhs) {
    if (a.rows() != rhs.size()) throw dimension_mismatch("solve: rhs size mismatch");
    complex_matrix lu = a;
    const auto perm = detail::lu_factor(lu);
    return detail::lu_solve(lu, perm, rhs);
}

/// Solves a X = B column by column.
inline complex_matrix solve(const complex_matrix& a, const complex_matrix& b) {
    if (a.rows() != b.rows()) throw dimension_mismatch("solve: rhs shape mismatch");
    complex_matrix lu = a;
    const auto perm = detail::lu_factor(lu);
    complex_matrix x(a.cols(), b.cols());
    cvec col(b.rows());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b.at(i, j);
        const cvec xi = detail::lu_solve(lu, perm, col);
        for (std::size_t i = 0; i < xi.size(); ++i) x.at(i, j) = xi[i];
    }
    return x;
}

inline complex_matrix inverse(const complex_matrix& a) {
    return solve(a, complex_matrix::identity(a.rows()));
}

} // namespace heinslab
