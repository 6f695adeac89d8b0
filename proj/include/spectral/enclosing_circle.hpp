#pragma once

#include "spectral/linalg.hpp"

#include <cstdint>
#include <span>

namespace spectral {

struct Circle {
    cplx center{0, 0};
    double radius = 0.0;

    bool contains(cplx p, double tol = 1e-12) const;
};

// Smallest circle enclosing the points (Chebyshev center and radius),
// Welzl's algorithm with a seeded shuffle.
Circle min_enclosing_circle(std::span<const cplx> points, std::uint64_t seed = 0);

} // namespace spectral
