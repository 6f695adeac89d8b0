#pragma once

#include "spectral/contour.hpp"
#include "spectral/linalg.hpp"

#include <memory>
#include <vector>

namespace spectral {

// Complex polynomial, ascending coefficients.
struct Poly {
    std::vector<cplx> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }

    cplx eval(cplx z) const {
        cplx v{0, 0};
        for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
        return v;
    }

    cplx deriv_eval(cplx z) const {
        cplx v{0, 0};
        for (std::size_t k = c.size(); k-- > 1;) v = v * z + static_cast<double>(k) * c[k];
        return v;
    }

    bool is_zero() const {
        for (const auto& a : c)
            if (a != cplx(0, 0)) return false;
        return true;
    }
};

// Rational generator p/q. Boundary data are always produced by such
// generators, which keeps them Hoelder continuous and differentiable along
// the curve. q defaults to 1.
struct RationalGen {
    Poly num;
    Poly den{{cplx(1, 0)}};

    cplx eval(cplx z) const { return num.eval(z) / den.eval(z); }

    cplx deriv(cplx z) const {
        const cplx q = den.eval(z);
        return (num.deriv_eval(z) * q - num.eval(z) * den.deriv_eval(z)) / (q * q);
    }
};

// Function values at the contour nodes. dvalues holds d(phi(sigma(t)))/dt
// when a generator was available (needed by the singular Cauchy transform);
// gen is kept so diagnostics can resample on a refined contour.
struct BoundarySamples {
    std::vector<cplx> values;
    std::vector<cplx> dvalues;
    bool analytic = false; // analytic on the closed domain
    std::shared_ptr<const RationalGen> gen;

    int size() const { return static_cast<int>(values.size()); }
};

// analytic: caller asserts the generator has no poles in the closed domain
// (always true for polynomials).
BoundarySamples sample(const Contour& c, const RationalGen& g, bool analytic = true);
BoundarySamples sample(const Contour& c, const Poly& p);
BoundarySamples constant_samples(const Contour& c, cplx v);

BoundarySamples conjugate(const BoundarySamples& s, bool analytic_result = false);
BoundarySamples pointwise_mul(const BoundarySamples& a, const BoundarySamples& b);
BoundarySamples scaled(const BoundarySamples& s, cplx factor);

// sup-norm over the nodes; by the maximum modulus principle this is the
// sup over the closed domain for analytic data
double boundary_sup(const BoundarySamples& s);

} // namespace spectral
