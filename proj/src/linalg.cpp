#include "spectral/linalg.hpp"

#include "spectral/errors.hpp"
#include "spectral/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spectral {

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::inf_norm() const {
    double best = 0.0;
    for (int i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (int j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
        best = std::max(best, row);
    }
    return best;
}

double CMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& v : a_) best = std::max(best, std::abs(v));
    return best;
}

bool CMatrix::all_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    const int n = a.dim();
    CMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { a += b; return a; }
CMatrix operator-(CMatrix a, const CMatrix& b) { a -= b; return a; }
CMatrix operator*(cplx s, CMatrix a) { a *= s; return a; }

CVector operator*(const CMatrix& a, const CVector& x) {
    const int n = a.dim();
    CVector y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

HermitianMatrix HermitianMatrix::from(const CMatrix& a, double tol) {
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol)
                throw Error("HermitianMatrix: entries not conjugate-symmetric within tolerance");
    // symmetrize exactly so downstream iterations see a true Hermitian matrix
    CMatrix h(n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = a(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return HermitianMatrix{std::move(h)};
}

namespace {

// in-place LU with partial pivoting; returns permutation, throws SingularMatrix
std::vector<int> lu_factor(CMatrix& a, double pivot_floor) {
    const int n = a.dim();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best <= pivot_floor)
            throw SingularMatrix("lu: pivot below threshold");
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(perm[k], perm[p]);
        }
        const cplx piv = a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx m = a(i, k) / piv;
            a(i, k) = m;
            if (m == 0.0) continue;
            for (int j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
        }
    }
    return perm;
}

CVector lu_apply(const CMatrix& lu, const std::vector<int>& perm, const CVector& b) {
    const int n = lu.dim();
    CVector x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (int i = 1; i < n; ++i) {
        cplx s = x[i];
        for (int j = 0; j < i; ++j) s -= lu(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx s = x[i];
        for (int j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
        x[i] = s / lu(i, i);
    }
    return x;
}

} // namespace

CVector lu_solve(const CMatrix& a, const CVector& b) {
    if (a.dim() != static_cast<int>(b.size()))
        throw Error("lu_solve: dimension mismatch");
    CMatrix lu = a;
    const double floor = 1e-13 * a.max_abs();
    auto perm = lu_factor(lu, floor);
    return lu_apply(lu, perm, b);
}

CMatrix lu_inverse(const CMatrix& a) {
    const int n = a.dim();
    CMatrix lu = a;
    const double floor = 1e-13 * a.max_abs();
    auto perm = lu_factor(lu, floor);
    CMatrix inv(n);
    CVector e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        e.assign(n, 0.0);
        e[j] = 1.0;
        CVector col = lu_apply(lu, perm, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

EigenResult hermitian_eigen(const HermitianMatrix& hm) {
    CMatrix h = hm.m;
    const int n = h.dim();
    CMatrix v = CMatrix::identity(n);
    const double hnorm = h.frobenius_norm();

    auto off_mass = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(h(i, j));
        return std::sqrt(s);
    };

    const double target = 1e-12 * hnorm;
    int sweep = 0;
    while (off_mass() > target) {
        if (++sweep > 100) throw NoConvergence("hermitian_eigen: no convergence in 100 sweeps");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx hpq = h(p, q);
                const double apq = std::abs(hpq);
                if (apq <= 1e-300) continue;
                // phase factor turns the 2x2 block real symmetric
                const cplx phase = hpq / apq;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // U = D(1, conj(phase)) * G(c, s) makes the 2x2 block real
                // symmetric and then rotates it diagonal; H <- U* H U, V <- V U.
                for (int j = 0; j < n; ++j) {
                    const cplx hpj = h(p, j);
                    const cplx hqj = h(q, j);
                    h(p, j) = c * hpj - s * phase * hqj;
                    h(q, j) = s * hpj + c * phase * hqj;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx hip = h(i, p);
                    const cplx hiq = h(i, q);
                    h(i, p) = c * hip - s * std::conj(phase) * hiq;
                    h(i, q) = s * hip + c * std::conj(phase) * hiq;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx vip = v(i, p);
                    const cplx viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(phase) * viq;
                    v(i, q) = s * vip + c * std::conj(phase) * viq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return h(i, i).real() < h(j, j).real(); });

    EigenResult r;
    r.values.resize(n);
    r.vectors = CMatrix(n);
    for (int k = 0; k < n; ++k) {
        r.values[k] = h(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
    }
    return r;
}

SingularResult top_singular(const CMatrix& m, std::uint64_t seed) {
    const int n = m.dim();
    if (m.max_abs() == 0.0) throw Error("top_singular: zero matrix");

    const CMatrix mm = m.adjoint() * m; // Hermitian positive semidefinite

    SplitMix64 rng(derive_seed(seed, 0x5157ull));
    CVector x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.next_complex_gaussian();
    double nx = vector_norm(x);
    for (auto& v : x) v /= nx;

    double sigma = 0.0;
    for (long iter = 0; iter < 100000; ++iter) {
        CVector y = mm * x;
        double lambda = std::max(0.0, inner_product(y, x).real());
        double s = std::sqrt(lambda);
        double ny = vector_norm(y);
        if (ny == 0.0) {
            // start landed in the kernel; reseed deterministically
            for (int i = 0; i < n; ++i) x[i] = rng.next_complex_gaussian();
            nx = vector_norm(x);
            for (auto& v : x) v /= nx;
            continue;
        }
        for (int i = 0; i < n; ++i) x[i] = y[i] / ny;
        if (iter > 0 && std::abs(s - sigma) <= 1e-12 * std::max(s, 1e-300)) {
            return {s, x};
        }
        sigma = s;
    }
    throw NoConvergence("top_singular: power iteration did not converge");
}

SingularResult top_singular_eigen(const CMatrix& m) {
    if (m.max_abs() == 0.0) throw Error("top_singular_eigen: zero matrix");
    auto e = hermitian_eigen(HermitianMatrix::from(m.adjoint() * m, 1e-10));
    const int n = m.dim();
    SingularResult r;
    r.sigma = std::sqrt(std::max(0.0, e.values.back()));
    r.right.resize(n);
    for (int i = 0; i < n; ++i) r.right[i] = e.vectors(i, n - 1);
    return r;
}

double operator_norm(const CMatrix& m) {
    return m.max_abs() == 0.0 ? 0.0 : top_singular_eigen(m).sigma;
}

cplx inner_product(const CVector& x, const CVector& y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

double vector_norm(const CVector& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

} // namespace spectral
