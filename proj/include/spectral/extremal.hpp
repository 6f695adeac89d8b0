#pragma once

#include "spectral/calculus.hpp"
#include "spectral/samples.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace spectral {

struct ExtremalResult {
    Poly f0_poly;        // normalized candidate, sup-norm 1 on the boundary
    BoundarySamples f0;
    CVector x0;          // unit right singular vector of gamma(f0)
    double gamma_lb;     // ||gamma(f0)||, a lower bound on ||gamma||
    double rho;          // <hat-gamma(Re(K(f0)* f0)) x0, x0>
    double bound;        // 1 + sqrt(1 - rho)
    cplx pairing;        // <gamma(f0) x0, x0>
    int degree = 0;
    int restarts = 0;
    std::uint64_t seed = 0;
    bool stalled = false; // no restart improved on the affine start
};

// Maximizes ||gamma(p)|| / sup|p| over polynomial coefficients by Nelder-Mead
// from seeded random starts plus one start at p(z) = z - centroid. The leading
// coefficient's phase is fixed to quotient out unimodular rescaling.
// start_rotation u rotates every start by conj(u)^k per coefficient; with the
// same seed this makes the searches for A and uA equivalent.
ExtremalResult search_extremal(const MatrixOperand& a, int degree, int restarts,
                               std::uint64_t seed, cplx start_rotation = cplx(1, 0),
                               std::vector<std::pair<int, double>>* trace = nullptr);

// rho(f0, x0) = Re <gamma(K(f0)* f0) x0, x0>; K(f0)* f0 is analytic.
double rho_of(const MatrixOperand& a, const BoundarySamples& f0, const CVector& x0);

struct BoundCheckResult {
    double slack_rho_bound;  // (1 + sqrt(1 - rho)) - gamma_lb
    double slack_cp;         // (1 + sqrt 2) - gamma_lb
    double measure_residual; // (gamma_lb - 1) |pairing|, reported only
};

// Asserts the spectral-constant inequalities on the search result; throws
// BoundViolated when one fails (an implementation red flag, not theory).
BoundCheckResult bound_check(const MatrixOperand& a, const ExtremalResult& r);

// Empirical sample of the analytic-configuration quantity: for seeded random
// normalized polynomials f, the Chebyshev radius (minimum enclosing circle) of
// the range set of K(f), maximized over the samples. Not a certified bound in
// either direction; asserted < 1 + 1e-6 on convex domains.
double analytic_config_lower(const Contour& c, int degree, int samples, std::uint64_t seed);

} // namespace spectral
