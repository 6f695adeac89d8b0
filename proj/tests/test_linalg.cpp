#include "doctest.h"

#include "spectral/errors.hpp"
#include "spectral/linalg.hpp"
#include "spectral/rng.hpp"

#include <cmath>

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

CMatrix random_matrix(int n, SplitMix64& rng) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.next_complex_gaussian();
    return m;
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("lu_solve identity") {
    CMatrix a = CMatrix::identity(3);
    CVector x = lu_solve(a, {1.0, 2.0, 3.0});
    CHECK(std::abs(x[0] - 1.0) < 1e-14);
    CHECK(std::abs(x[1] - 2.0) < 1e-14);
    CHECK(std::abs(x[2] - 3.0) < 1e-14);
}

TEST_CASE("lu_solve diagonal") {
    CMatrix a = from_rows(2, {2.0, 0.0, 0.0, cplx(0, 1)});
    CVector x = lu_solve(a, {2.0, cplx(0, 1)});
    CHECK(std::abs(x[0] - 1.0) < 1e-14);
    CHECK(std::abs(x[1] - 1.0) < 1e-14);
}

TEST_CASE("lu_solve upper triangular by hand") {
    // [[1,1],[0,1]] x = (3,1) -> back substitution gives (2,1)
    CMatrix a = from_rows(2, {1.0, 1.0, 0.0, 1.0});
    CVector x = lu_solve(a, {3.0, 1.0});
    CHECK(std::abs(x[0] - 2.0) < 1e-14);
    CHECK(std::abs(x[1] - 1.0) < 1e-14);
}

TEST_CASE("lu_solve flags singular input") {
    CMatrix a = from_rows(2, {1.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(lu_solve(a, {1.0, 1.0}), SingularMatrix);
}

TEST_CASE("lu roundtrip on random well-conditioned systems") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 7);
        CMatrix a = random_matrix(n, rng);
        for (int i = 0; i < n; ++i) a(i, i) += 4.0; // keep it well-conditioned
        CVector x0(n);
        for (auto& v : x0) v = rng.next_complex_gaussian();
        CVector b = a * x0;
        CVector x = lu_solve(a, b);
        double err = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            err = std::max(err, std::abs(x[i] - x0[i]));
            scale = std::max(scale, std::abs(x0[i]));
        }
        CHECK(err <= 1e-9 * std::max(1.0, scale));
    }
}

TEST_CASE("hermitian_eigen pauli matrix") {
    auto h = HermitianMatrix::from(from_rows(2, {0.0, 1.0, 1.0, 0.0}));
    auto e = hermitian_eigen(h);
    CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eigen sorts diagonal") {
    auto h = HermitianMatrix::from(from_rows(3, {3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0}));
    auto e = hermitian_eigen(h);
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(2.0));
    CHECK(e.values[2] == doctest::Approx(3.0));
}

TEST_CASE("hermitian_eigen pauli-y type") {
    // [[0, -i],[i, 0]]: characteristic polynomial L^2 - 1
    auto h = HermitianMatrix::from(from_rows(2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}));
    auto e = hermitian_eigen(h);
    CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eigen residuals on random matrices") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 7);
        CMatrix g = random_matrix(n, rng);
        CMatrix h = g + g.adjoint();
        auto hm = HermitianMatrix::from(h);
        auto e = hermitian_eigen(hm);
        const double hn = h.frobenius_norm();
        for (int k = 0; k < n; ++k) {
            CVector v(n);
            for (int i = 0; i < n; ++i) v[i] = e.vectors(i, k);
            CVector hv = h * v;
            double res = 0.0;
            for (int i = 0; i < n; ++i) res += std::norm(hv[i] - e.values[k] * v[i]);
            CHECK(std::sqrt(res) <= 1e-10 * hn);
        }
    }
}

TEST_CASE("top_singular diagonal") {
    auto r = top_singular(from_rows(2, {3.0, 0.0, 0.0, 1.0}), 1);
    CHECK(r.sigma == doctest::Approx(3.0).epsilon(1e-11));
    CHECK(std::abs(r.right[0]) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("top_singular nilpotent") {
    auto r = top_singular(from_rows(2, {0.0, 2.0, 0.0, 0.0}), 1);
    CHECK(r.sigma == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(std::abs(r.right[1]) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("top_singular isometry") {
    auto r = top_singular(CMatrix::identity(2), 1);
    CHECK(r.sigma == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(vector_norm(r.right) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("top_singular cross-oracle against hermitian_eigen") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 5);
        CMatrix m = random_matrix(n, rng);
        auto s = top_singular(m, trial);
        auto e = hermitian_eigen(HermitianMatrix::from(m.adjoint() * m));
        const double ref = std::sqrt(std::max(0.0, e.values.back()));
        CHECK(std::abs(s.sigma - ref) <= 1e-9 * ref);
    }
}

} // TEST_SUITE
