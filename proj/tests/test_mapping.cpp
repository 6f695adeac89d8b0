#include "doctest.h"

#include "spectral/errors.hpp"
#include "spectral/mapping.hpp"

#include <cmath>
#include <sstream>

using namespace spectral;

namespace {

CMatrix from_rows(int n, std::initializer_list<cplx> entries) {
    CMatrix m(n);
    int k = 0;
    for (cplx v : entries) {
        m(k / n, k % n) = v;
        ++k;
    }
    return m;
}

Contour unit_circle(int n = 256) { return make_contour(ContourSpec::make_circle({0, 0}, 1.0, n)); }

Poly monomial(int k) {
    std::vector<cplx> c(k + 1, cplx(0, 0));
    c[k] = 1.0;
    return Poly{c};
}

} // namespace

TEST_SUITE("mapping") {

TEST_CASE("normalize_unit_ball") {
    Contour c = unit_circle(64);
    auto f = normalize_unit_ball(c, Poly{{0.0, cplx(2, 0)}}); // 2z -> z
    CHECK(boundary_sup(f) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(f.values[0] - c.node(0)) < 1e-12);

    auto g = normalize_unit_ball(c, Poly{{cplx(3, 0), cplx(1, 0)}}); // (z+3)/4
    CHECK(boundary_sup(g) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g.values[0] - 1.0) < 1e-12); // max modulus attained at z = 1

    Contour e = make_contour(ContourSpec::make_ellipse({0, 0}, 2, 1, 64));
    auto h = normalize_unit_ball(e, monomial(1)); // z/2
    CHECK(std::abs(h.values[0] - 1.0) < 1e-12);

    CHECK_THROWS_AS(normalize_unit_ball(c, Poly{{0.0, 0.0}}), ZeroFunction);
}

TEST_CASE("putinar-sandberg equality case on the disk") {
    Contour c = unit_circle();
    MatrixOperand nil(from_rows(2, {0.0, 2.0, 0.0, 0.0}), c);
    auto r = putinar_sandberg_verify(nil, normalize_unit_ball(c, monomial(1)));
    CHECK(r.kernel_member);
    CHECK(r.numerical_radius == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.okubo_norm == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("nilpotent squared maps to zero") {
    Contour c = unit_circle();
    MatrixOperand nil(from_rows(2, {0.0, 2.0, 0.0, 0.0}), c);
    auto r = putinar_sandberg_verify(nil, normalize_unit_ball(c, monomial(2)));
    CHECK(r.numerical_radius == doctest::Approx(0.0));
    CHECK(r.okubo_norm == doctest::Approx(0.0));
}

TEST_CASE("scalar case") {
    Contour c = unit_circle();
    MatrixOperand s(from_rows(1, {0.5}), c);
    auto r = putinar_sandberg_verify(s, normalize_unit_ball(c, monomial(2)));
    CHECK(r.numerical_radius == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(r.numerical_radius <= 1.0 + 1e-6);
}

TEST_CASE("hypothesis violations are reported") {
    Contour star = make_contour(ContourSpec::make_star(1.0, 0.3, 3, 256));
    MatrixOperand a(from_rows(1, {0.1}), star);
    CHECK_THROWS_AS(putinar_sandberg_verify(a, normalize_unit_ball(star, monomial(1))),
                    HypothesisViolated);

    Contour c = unit_circle();
    MatrixOperand big(from_rows(2, {0.0, 4.0, 0.0, 0.0}), c); // W(A) radius 2
    CHECK_THROWS_AS(putinar_sandberg_verify(big, normalize_unit_ball(c, monomial(1))),
                    HypothesisViolated);

    MatrixOperand ok(from_rows(1, {0.1}), c);
    auto f = sample(c, Poly{{0.0, cplx(2, 0)}}); // sup = 2, not normalized
    CHECK_THROWS_AS(putinar_sandberg_verify(ok, f), HypothesisViolated);
}

TEST_CASE("teardrop reduces to Berger-Stampfli for f(0) = 0") {
    Contour c = unit_circle();
    MatrixOperand nil(from_rows(2, {0.0, 2.0, 0.0, 0.0}), c);
    CHECK(drury_teardrop_verify(nil, normalize_unit_ball(c, monomial(1))) >= -1e-6);
}

TEST_CASE("teardrop for constant one") {
    Contour c = unit_circle();
    MatrixOperand nil(from_rows(2, {0.0, 2.0, 0.0, 0.0}), c);
    // gamma(1) = I, W = {1}, h_tear(0) = 1
    const double slack = drury_teardrop_verify(nil, constant_samples(c, 1.0));
    CHECK(slack >= -1e-6);
    CHECK(slack <= 1e-6); // contact at theta = 0
}

TEST_CASE("teardrop for the shifted half map") {
    Contour c = unit_circle();
    MatrixOperand nil(from_rows(2, {0.0, 2.0, 0.0, 0.0}), c);
    // f = (z+1)/2: f(0) = 1/2, teardrop disk radius 3/4
    auto f = normalize_unit_ball(c, Poly{{cplx(0.5, 0), cplx(0.5, 0)}});
    CHECK(drury_teardrop_verify(nil, f) >= -1e-6);
}

TEST_CASE("teardrop requires a disk domain") {
    Contour e = make_contour(ContourSpec::make_ellipse({0, 0}, 2, 1, 256));
    MatrixOperand a(from_rows(1, {0.1}), e);
    CHECK_THROWS_AS(drury_teardrop_verify(a, normalize_unit_ball(e, monomial(1))),
                    HypothesisViolated);
}

TEST_CASE("crouzeix 2007 inequality equality case") {
    Contour c = unit_circle();
    MatrixOperand nil(from_rows(2, {0.0, 2.0, 0.0, 0.0}), c);
    auto r = calc_inequalities(nil, normalize_unit_ball(c, monomial(1)));
    // K(z) = 0 and ||gamma(z)|| = 2: slack hits zero on both inequalities
    CHECK(r.crouzeix07_slack == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(std::abs(r.rs18_slack) <= 1e-4);
}

TEST_CASE("crouzeix 2007 for constants") {
    Contour c = unit_circle();
    MatrixOperand nil(from_rows(2, {0.0, 2.0, 0.0, 0.0}), c);
    auto r = calc_inequalities(nil, constant_samples(c, 1.0));
    CHECK(r.crouzeix07_slack == doctest::Approx(2.0).epsilon(1e-8)); // 2 + 1 - 1
}

TEST_CASE("inequalities hold on a random ellipse sweep") {
    Contour e = make_contour(ContourSpec::make_ellipse({0, 0}, 2, 1, 256));
    EnsembleConfig cfg;
    cfg.count = 10;
    cfg.dim = 3;
    cfg.degree = 4;
    cfg.seed = 5;
    cfg.zero_at_center = false;
    auto rows = run_mapping_ensemble(e, cfg);
    REQUIRE(rows.size() == 10);
    for (const auto& r : rows) {
        CHECK(r.report.crouzeix07_slack >= -1e-6);
        CHECK(r.report.rs18_slack >= -1e-6);
        CHECK_FALSE(r.report.teardrop_slack.has_value()); // not a disk
    }
}

TEST_CASE("disk ensemble with centered functions meets the mapping bounds") {
    Contour c = unit_circle();
    EnsembleConfig cfg;
    cfg.count = 12;
    cfg.dim = 3;
    cfg.degree = 5;
    cfg.seed = 11;
    cfg.zero_at_center = true;
    auto rows = run_mapping_ensemble(c, cfg);
    for (const auto& r : rows) {
        CHECK(r.report.kernel_member); // f(0) = 0 is the exact disk kernel
        CHECK(r.report.numerical_radius <= 1.0 + 1e-6);
        CHECK(r.report.okubo_norm <= 2.0 + 1e-6);
        REQUIRE(r.report.teardrop_slack.has_value());
        CHECK(*r.report.teardrop_slack >= -1e-6);
    }
}

TEST_CASE("okubo-ando holds with free centers") {
    Contour c = unit_circle();
    EnsembleConfig cfg;
    cfg.count = 12;
    cfg.dim = 2;
    cfg.degree = 4;
    cfg.seed = 23;
    cfg.zero_at_center = false;
    auto rows = run_mapping_ensemble(c, cfg);
    for (const auto& r : rows) {
        CHECK(r.report.okubo_norm <= 2.0 + 1e-6);
        REQUIRE(r.report.teardrop_slack.has_value());
        CHECK(*r.report.teardrop_slack >= -1e-6);
    }
}

TEST_CASE("ensemble csv rows") {
    Contour c = unit_circle();
    EnsembleConfig cfg;
    cfg.count = 2;
    cfg.dim = 2;
    cfg.degree = 3;
    cfg.seed = 1;
    auto rows = run_mapping_ensemble(c, cfg);
    std::ostringstream os;
    write_ensemble_csv(rows, os);
    const std::string s = os.str();
    CHECK(std::count(s.begin(), s.end(), '\n') == 3);
    CHECK(s.rfind("seed,dim,degree", 0) == 0);
}

TEST_CASE("ensemble is deterministic in the seed") {
    Contour c = unit_circle();
    EnsembleConfig cfg;
    cfg.count = 3;
    cfg.dim = 2;
    cfg.degree = 3;
    cfg.seed = 77;
    auto a = run_mapping_ensemble(c, cfg);
    auto b = run_mapping_ensemble(c, cfg);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].report.okubo_norm == b[i].report.okubo_norm);
        CHECK(a[i].report.numerical_radius == b[i].report.numerical_radius);
    }
}

} // TEST_SUITE
