#include "spectral/enclosing_circle.hpp"

#include "spectral/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spectral {

namespace {

Circle from_two(cplx a, cplx b) {
    const cplx c = 0.5 * (a + b);
    return {c, std::abs(a - c)};
}

// circumcircle; falls back to the widest two-point circle when collinear
Circle from_three(cplx a, cplx b, cplx c) {
    const double d = 2.0 * (a.real() * (b.imag() - c.imag()) + b.real() * (c.imag() - a.imag()) +
                            c.real() * (a.imag() - b.imag()));
    if (std::abs(d) < 1e-14 * (std::abs(a - b) + std::abs(b - c) + 1e-300)) {
        Circle best = from_two(a, b);
        for (const Circle& t : {from_two(a, c), from_two(b, c)})
            if (t.radius > best.radius) best = t;
        return best;
    }
    const double na = std::norm(a), nb = std::norm(b), nc = std::norm(c);
    const double ux =
        (na * (b.imag() - c.imag()) + nb * (c.imag() - a.imag()) + nc * (a.imag() - b.imag())) / d;
    const double uy =
        (na * (c.real() - b.real()) + nb * (a.real() - c.real()) + nc * (b.real() - a.real())) / d;
    const cplx center{ux, uy};
    return {center, std::abs(a - center)};
}

Circle trivial(const std::vector<cplx>& support) {
    switch (support.size()) {
    case 0: return {cplx(0, 0), 0.0};
    case 1: return {support[0], 0.0};
    case 2: return from_two(support[0], support[1]);
    default: return from_three(support[0], support[1], support[2]);
    }
}

Circle welzl(std::vector<cplx>& pts, std::size_t n, std::vector<cplx> support) {
    if (n == 0 || support.size() == 3) return trivial(support);
    const cplx p = pts[n - 1];
    Circle c = welzl(pts, n - 1, support);
    if (c.contains(p)) return c;
    support.push_back(p);
    return welzl(pts, n - 1, std::move(support));
}

} // namespace

bool Circle::contains(cplx p, double tol) const {
    return std::abs(p - center) <= radius + tol * (1.0 + radius);
}

Circle min_enclosing_circle(std::span<const cplx> points, std::uint64_t seed) {
    std::vector<cplx> pts(points.begin(), points.end());
    SplitMix64 rng(derive_seed(seed, 0x6d6563ull));
    for (std::size_t i = pts.size(); i > 1; --i)
        std::swap(pts[i - 1], pts[rng.next() % i]);
    return welzl(pts, pts.size(), {});
}

} // namespace spectral
