#pragma once

#include <complex>
#include <cmath>
#include <cstdint>

namespace spectral {

// SplitMix64. Used everywhere randomness is needed so that results do not
// depend on the standard library's distribution implementations.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // standard normal, Box-Muller
    double next_gaussian() {
        double u = 0.0;
        while (u == 0.0) u = next_double();
        double v = next_double();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
    }

    std::complex<double> next_complex_gaussian() {
        double u = 0.0;
        while (u == 0.0) u = next_double();
        double v = next_double();
        double r = std::sqrt(-2.0 * std::log(u));
        double a = 6.283185307179586476925287 * v;
        return {r * std::cos(a), r * std::sin(a)};
    }
};

// Deterministic per-trial seeds derived by splitting a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    SplitMix64 g(master ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
    return g.next();
}

} // namespace spectral
