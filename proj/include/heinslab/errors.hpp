#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "heinslab/types.hpp"

namespace heinslab {

/// Base class of everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct syntax_error : error {
    syntax_error(std::size_t pos, std::string expected_tokens, const std::string& detail)
        : error("syntax error at position " + std::to_string(pos) + ": " + detail +
                " (expected " + expected_tokens + ")"),
          position(pos),
          expected(std::move(expected_tokens)) {}
    std::size_t position;
    std::string expected;
};

/// A token that would break holomorphy (conj, abs, re, im, ...) or a
/// branch-cut function excluded from the grammar (log, sqrt).
struct holomorphy_error : error {
    holomorphy_error(std::size_t pos, std::string tok, const std::string& reason)
        : error("non-holomorphic token '" + tok + "' at position " + std::to_string(pos) +
                ": " + reason),
          position(pos),
          token(std::move(tok)) {}
    std::size_t position;
    std::string token;
};

struct unknown_function : error {
    unknown_function(std::size_t pos, std::string fname)
        : error("unknown function '" + fname + "' at position " + std::to_string(pos) +
                " (supported: exp, sin, cos)"),
          position(pos),
          name(std::move(fname)) {}
    std::size_t position;
    std::string name;
};

struct dimension_mismatch : error {
    using error::error;
};

struct numeric_overflow : error {
    using error::error;
};

struct point_outside_domain : error {
    using error::error;
};

struct circle_leaves_domain : error {
    using error::error;
};

struct non_square : error {
    using error::error;
};

struct singular_matrix : error {
    using error::error;
};

struct max_iterations_exceeded : error {
    max_iterations_exceeded(std::size_t iters, cvec last, double resid)
        : error("no fixed point after " + std::to_string(iters) +
                " iterations (residual " + std::to_string(resid) +
                "); the map may contract too slowly or violate the compact-image hypothesis"),
          iterations(iters),
          last_iterate(std::move(last)),
          residual(resid) {}
    std::size_t iterations;
    cvec last_iterate;
    double residual;
};

/// An iterate escaped the domain: the map is not a self-map.
struct iterate_left_domain : error {
    iterate_left_domain(std::size_t step, cvec point)
        : error("iterate " + std::to_string(step) +
                " left the domain; self-map hypothesis violated"),
          step(step),
          witness(std::move(point)) {}
    std::size_t step;
    cvec witness;
};

/// The image of a sample point fell outside the domain during the
/// compact-image check: the map is not a self-map at all.
struct evaluation_failure : error {
    evaluation_failure(std::string what_happened, cvec point)
        : error(std::move(what_happened)), witness(std::move(point)) {}
    cvec witness;
};

/// A map (or a parametric slice of a family) has an image that is not
/// relatively compact at the configured margin.
struct holc_violation : error {
    holc_violation(std::string what_happened, cvec point, std::optional<cvec> param = {})
        : error(std::move(what_happened)),
          witness(std::move(point)),
          witness_param(std::move(param)) {}
    cvec witness;
    std::optional<cvec> witness_param;
};

} // namespace heinslab
