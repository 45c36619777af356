#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "heinslab/types.hpp"

namespace heinslab {

/// Deterministic pseudo-random stream (splitmix64).
///
/// All sampling in the library goes through this generator so that a run is
/// reproducible from its seed alone. splitmix64 is a fixed, documented
/// algorithm; unit doubles are built as (x >> 11) * 2^-53, so the stream does
/// not depend on any implementation-defined distribution code.
class split_mix64 {
public:
    explicit split_mix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    /// Standard normal (Box-Muller, spare cached).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_unit();
        while (u1 == 0.0) u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform complex in the square [-1,1) x [-1,1).
    cplx next_complex_box() {
        const double re = next_symmetric();
        return {re, next_symmetric()};
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Derives a substream seed from a base seed and a label, so independent
/// checks sharing one user seed do not consume each other's stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t label) {
    split_mix64 s(base ^ (0x9e3779b97f4a7c15ull * (label + 1)));
    return s.next_u64();
}

/// FNV-1a 64-bit hash; used for input digests and seed labels.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace heinslab
