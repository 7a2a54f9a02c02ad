#pragma once

#include <cmath>
#include <cstdint>

namespace spdelab::rng {

// Counter-based generator: every variate is a pure function of
// (master seed, path index, counter).  Ensembles are reproducible bit for
// bit no matter how paths are distributed over workers.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t path, std::uint64_t counter) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (path * 0xd1342543de82ef95ull));
    h = mix64(h ^ (counter * 0xaf251af3b0f025b5ull));
    return h;
}

/// Uniform in (0,1]; never returns 0 so that log() below is safe.
inline double uniform01(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal via Box-Muller, one variate per (seed, path, counter).
inline double normal(std::uint64_t seed, std::uint64_t path, std::uint64_t counter) {
    const std::uint64_t h = key(seed, path, counter);
    const double u1 = uniform01(h);
    const double u2 = uniform01(mix64(h ^ 0x6a09e667f3bcc909ull));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace spdelab::rng
