#include "doctest.h"

#include "spectral/cauchy.hpp"
#include "spectral/errors.hpp"

#include <cmath>

using namespace spectral;

namespace {

Poly monomial(int k) {
    std::vector<cplx> c(k + 1, cplx(0, 0));
    c[k] = 1.0;
    return Poly{c};
}

// 1/(z - p)
RationalGen simple_pole(cplx p) {
    return RationalGen{Poly{{cplx(1, 0)}}, Poly{{-p, cplx(1, 0)}}};
}

} // namespace

TEST_SUITE("cauchy") {

TEST_CASE("interior transform reproduces analytic data") {
    Contour c = make_contour(ContourSpec::make_circle({0, 0}, 1.0, 64));
    auto f = sample(c, monomial(2));
    // Cauchy integral formula: value is z^2 at z = 0.3i
    const cplx z{0, 0.3};
    CHECK(std::abs(cauchy_interior(c, f, z) - z * z) < 1e-12);
}

TEST_CASE("interior transform annihilates exterior data") {
    Contour c = make_contour(ContourSpec::make_circle({0, 0}, 1.0, 64));
    auto f = sample(c, simple_pole({0, 0}), false); // 1/sigma, pole inside
    CHECK(std::abs(cauchy_interior(c, f, {0.5, 0})) < 1e-12);
}

TEST_CASE("interior transform on the ellipse at the center") {
    Contour c = make_contour(ContourSpec::make_ellipse({0, 0}, 2.0, 1.0, 256));
    auto f = sample(c, monomial(1));
    CHECK(std::abs(cauchy_interior(c, f, {0, 0})) < 1e-12);
}

TEST_CASE("exterior transform residue case") {
    Contour c = make_contour(ContourSpec::make_circle({0, 0}, 1.0, 256));
    auto f = sample(c, simple_pole({0, 0}), false);
    // residue of 1/(s(s-2)) at s=0 gives -1/2
    CHECK(std::abs(cauchy_exterior(c, f, {2, 0}) - cplx(-0.5, 0)) < 1e-12);
}

TEST_CASE("exterior transform annihilates interior data") {
    Contour c = make_contour(ContourSpec::make_circle({0, 0}, 1.0, 256));
    CHECK(std::abs(cauchy_exterior(c, sample(c, monomial(2)), {3, 0})) < 1e-9);
    CHECK(std::abs(cauchy_exterior(c, constant_samples(c, 1.0), {2, 0})) < 1e-12);
}

TEST_CASE("region preconditions") {
    Contour c = make_contour(ContourSpec::make_circle({0, 0}, 1.0, 64));
    auto f = sample(c, monomial(1));
    CHECK_THROWS_AS(cauchy_interior(c, f, {2, 0}), OutsideRegion);
    CHECK_THROWS_AS(cauchy_exterior(c, f, {0.2, 0}), InsideRegion);
    CHECK_THROWS_AS(cauchy_interior(c, f, {0.999, 0}), TooCloseToBoundary);
}

TEST_CASE("singular transform closed forms on the unit circle") {
    Contour c = make_contour(ContourSpec::make_circle({0, 0}, 1.0, 128));
    for (int k : {1, 2, 5}) {
        auto f = sample(c, monomial(k));
        for (int i : {0, 17, 63}) {
            const cplx si = c.node(i);
            // Plemelj with Phi_int = s^k, Phi_ext = 0
            CHECK(std::abs(cauchy_singular(c, f, i) - 0.5 * std::pow(si, k)) < 1e-12);
        }
    }

    auto one = constant_samples(c, 1.0);
    CHECK(std::abs(cauchy_singular(c, one, 5) - cplx(0.5, 0)) < 1e-13);

    auto inv = sample(c, simple_pole({0, 0}), false);
    for (int i : {3, 40}) {
        const cplx si = c.node(i);
        // Phi_int = 0, Phi_ext = -1/s, so Phi = -1/(2 s_i)
        CHECK(std::abs(cauchy_singular(c, inv, i) + 0.5 / si) < 1e-12);
    }
}

TEST_CASE("plemelj residuals for polynomial data on the circle") {
    Contour c = make_contour(ContourSpec::make_circle({0, 0}, 1.0, 256));
    auto r = plemelj_residuals(c, sample(c, monomial(3)));
    CHECK(r.interior_err <= 1e-6);
    CHECK(r.exterior_err <= 1e-6);
    CHECK(r.jump_err <= 1e-6);
}

TEST_CASE("plemelj residuals for entire data on the ellipse") {
    Contour c = make_contour(ContourSpec::make_ellipse({0, 0}, 2.0, 1.0, 512));
    // degree-8 Taylor slice of exp(z); self-consistency, no closed form needed
    std::vector<cplx> coeffs;
    double fact = 1.0;
    for (int k = 0; k <= 8; ++k) {
        coeffs.push_back(1.0 / fact);
        fact *= (k + 1);
    }
    auto r = plemelj_residuals(c, sample(c, Poly{coeffs}));
    CHECK(r.interior_err <= 1e-6);
    CHECK(r.exterior_err <= 1e-6);
    CHECK(r.jump_err <= 1e-6);
}

TEST_CASE("plemelj jump for constants is exact") {
    Contour c = make_contour(ContourSpec::make_circle({0, 0}, 1.0, 256));
    auto r = plemelj_residuals(c, constant_samples(c, 1.0));
    CHECK(r.jump_err <= 1e-10);
}

TEST_CASE("plemelj residuals with rational data on the star") {
    Contour c = make_contour(ContourSpec::make_star(1.0, 0.3, 3, 512));
    auto r = plemelj_residuals(c, sample(c, simple_pole({2.5, 1.0}), true));
    CHECK(r.interior_err <= 1e-6);
    CHECK(r.exterior_err <= 1e-6);
    CHECK(r.jump_err <= 1e-6);
}

TEST_CASE("jump formula holds for polynomial degrees up to 8 on all families") {
    for (const auto& spec : {ContourSpec::make_circle({0, 0}, 1.0, 512),
                             ContourSpec::make_ellipse({0, 0}, 2, 1, 512),
                             ContourSpec::make_star(1.0, 0.3, 3, 512)}) {
        Contour c = make_contour(spec);
        for (int k : {0, 4, 8}) {
            auto r = plemelj_residuals(c, sample(c, monomial(k)));
            CHECK(r.jump_err <= 1e-6);
        }
    }
}

} // TEST_SUITE
