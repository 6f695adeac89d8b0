#include "spectral/calculus.hpp"

#include "spectral/dlayer.hpp"
#include "spectral/errors.hpp"

#include <algorithm>
#include <cmath>

namespace spectral {

namespace {
constexpr double kPi = 3.141592653589793238462643;
constexpr double kTwoPi = 2.0 * kPi;

CMatrix resolvent_at(const CMatrix& a, cplx sigma) {
    const int d = a.dim();
    CMatrix m(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m(i, j) = -a(i, j);
        m(i, i) += sigma;
    }
    try {
        return lu_inverse(m);
    } catch (const SingularMatrix&) {
        throw ResolventSingular("resolvent: node too close to an eigenvalue");
    }
}

} // namespace

int spectrum_inside_count(const CMatrix& a, const Contour& c) {
    const int n = c.size();
    cplx acc{0, 0};
    for (int j = 0; j < n; ++j) {
        const CMatrix r = resolvent_at(a, c.node(j));
        cplx tr{0, 0};
        for (int i = 0; i < a.dim(); ++i) tr += r(i, i);
        acc += c.velocity(j) * tr;
    }
    const cplx count = acc / cplx(0, static_cast<double>(n));
    const double rounded = std::round(count.real());
    if (std::abs(count - cplx(rounded, 0)) > 1e-6)
        throw NonIntegerCount("spectrum_inside_count: quadrature too coarse");
    return static_cast<int>(rounded);
}

MatrixOperand::MatrixOperand(CMatrix a, Contour c) : a_(std::move(a)), c_(std::move(c)) {
    const int n = c_.size();
    resolvents_.reserve(n);
    cplx acc{0, 0};
    for (int j = 0; j < n; ++j) {
        resolvents_.push_back(resolvent_at(a_, c_.node(j)));
        cplx tr{0, 0};
        for (int i = 0; i < a_.dim(); ++i) tr += resolvents_.back()(i, i);
        acc += c_.velocity(j) * tr;
    }
    const cplx count = acc / cplx(0, static_cast<double>(n));
    const double rounded = std::round(count.real());
    if (std::abs(count - cplx(rounded, 0)) > 1e-6)
        throw NonIntegerCount("MatrixOperand: quadrature too coarse");
    inside_count_ = static_cast<int>(rounded);
    if (inside_count_ != a_.dim())
        throw HypothesisViolated("MatrixOperand: spectrum not inside the contour");
}

CMatrix gamma_apply(const MatrixOperand& a, const BoundarySamples& f) {
    const Contour& c = a.contour();
    if (f.size() != c.size()) throw Error("gamma_apply: sample length mismatch");
    const int n = c.size();
    const int d = a.dim();
    CMatrix acc(d);
    for (int j = 0; j < n; ++j) {
        const cplx w = c.velocity(j) * f.values[j];
        const CMatrix& r = a.resolvent(j);
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) acc(p, q) += w * r(p, q);
    }
    acc *= 1.0 / cplx(0, static_cast<double>(n));
    return acc;
}

CMatrix hat_gamma_apply(const MatrixOperand& a, const BoundarySamples& f,
                        const BoundarySamples& g) {
    return gamma_apply(a, f) + gamma_apply(a, g).adjoint();
}

HermitianMatrix op_dl_potential(const MatrixOperand& a, int node) {
    const int d = a.dim();
    const cplx nj = a.contour().normal(node);
    const CMatrix& r = a.resolvent(node);
    CMatrix t(d);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) t(p, q) = nj * r(p, q);
    CMatrix h = t + t.adjoint();
    h *= 1.0 / (2.0 * kPi);
    return HermitianMatrix::from(h, 1e-12);
}

CMatrix sym_calculus_apply(const MatrixOperand& a, const BoundarySamples& phi) {
    const Contour& c = a.contour();
    if (phi.size() != c.size()) throw Error("sym_calculus_apply: sample length mismatch");
    const int n = c.size();
    const int d = a.dim();
    CMatrix acc(d);
    for (int j = 0; j < n; ++j) {
        const cplx w = c.weight(j) * phi.values[j];
        const cplx nj = c.normal(j);
        const CMatrix& r = a.resolvent(j);
        // w * (n R + (n R)*) / (2 pi), accumulated entrywise
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q)
                acc(p, q) += w * (nj * r(p, q) + std::conj(nj * r(q, p)));
    }
    acc *= 1.0 / kTwoPi;

    if (phi.analytic) {
        // decomposition route: gamma(K(f)*)* + gamma(f)
        const BoundarySamples kf = np_apply(np_matrix(c), phi);
        const CMatrix other =
            gamma_apply(a, conjugate(kf, true)).adjoint() + gamma_apply(a, phi);
        if ((acc - other).frobenius_norm() > 1e-7)
            throw DecompositionMismatch("sym_calculus_apply: quadrature paths disagree");
    }
    return acc;
}

double nrange_support(const CMatrix& a, double theta) {
    const cplx u = std::polar(1.0, -theta);
    const int d = a.dim();
    CMatrix t(d);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
            t(p, q) = 0.5 * (u * a(p, q) + std::conj(u * a(q, p)));
    auto e = hermitian_eigen(HermitianMatrix::from(t, 1e-10));
    return e.values.back();
}

namespace {

double radius_sweep(const CMatrix& a, int angles) {
    double best = -1e300;
    std::vector<double> h(angles);
    for (int k = 0; k < angles; ++k) h[k] = nrange_support(a, kTwoPi * k / angles);
    for (int k = 0; k < angles; ++k) {
        // parabolic refinement through the angular neighbours
        const double fm = h[(k + angles - 1) % angles];
        const double f0 = h[k];
        const double fp = h[(k + 1) % angles];
        double v = f0;
        const double denom = fm - 2.0 * f0 + fp;
        if (denom < 0.0) {
            const double d = 0.5 * (fm - fp) / denom;
            if (std::abs(d) <= 1.0) v = f0 - 0.25 * (fm - fp) * d;
        }
        best = std::max(best, v);
    }
    return best;
}

} // namespace

double numerical_radius(const CMatrix& a) {
    radius_sweep(a, 720); // coarse pass kept as a stability guard
    return radius_sweep(a, 1440);
}

OperandReport nrange_inclusion(const MatrixOperand& a) {
    const Contour& c = a.contour();
    if (!convexity_report(c).is_convex)
        throw NonConvexDomain("nrange_inclusion: contour is not convex");

    const int n = c.size();
    double min_eig = 1e300;
    for (int j = 0; j < n; ++j) {
        auto e = hermitian_eigen(op_dl_potential(a, j));
        min_eig = std::min(min_eig, e.values.front());
    }

    double slack = 1e300;
    for (int k = 0; k < 360; ++k) {
        const double theta = kTwoPi * k / 360;
        slack = std::min(slack, domain_support(c, theta) - nrange_support(a.matrix(), theta));
    }

    const bool by_kernel = min_eig >= -1e-8;
    const bool by_support = slack >= -1e-6;
    if (by_kernel != by_support)
        throw InconsistentInclusion("nrange_inclusion: kernel and support verdicts disagree");

    const double sym_norm = operator_norm(sym_calculus_apply(a, constant_samples(c, 1.0)));
    return {min_eig, slack, sym_norm, by_kernel};
}

} // namespace spectral
