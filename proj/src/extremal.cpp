#include "spectral/extremal.hpp"

#include "spectral/dlayer.hpp"
#include "spectral/enclosing_circle.hpp"
#include "spectral/errors.hpp"
#include "spectral/nelder_mead.hpp"
#include "spectral/rng.hpp"

#include <algorithm>
#include <cmath>

namespace spectral {

namespace {

// coefficients <-> optimizer coordinates; Im of the leading coefficient is
// pinned at zero to remove the unimodular-rescaling flat direction
std::vector<double> encode(const Poly& p) {
    const int d = p.degree();
    std::vector<double> x(2 * d + 1);
    for (int k = 0; k < d; ++k) {
        x[2 * k] = p.c[k].real();
        x[2 * k + 1] = p.c[k].imag();
    }
    x[2 * d] = p.c[d].real();
    return x;
}

Poly decode(const std::vector<double>& x) {
    const int d = (static_cast<int>(x.size()) - 1) / 2;
    Poly p;
    p.c.resize(d + 1);
    for (int k = 0; k < d; ++k) p.c[k] = cplx(x[2 * k], x[2 * k + 1]);
    p.c[d] = cplx(x[2 * d], 0.0);
    return p;
}

// rotate p(z) -> p(conj(u) z) and re-phase so the leading coefficient is real
Poly rotate_start(Poly p, cplx u) {
    cplx pw{1, 0};
    for (auto& ck : p.c) {
        ck *= pw;
        pw *= std::conj(u);
    }
    const cplx lead = p.c.back();
    if (std::abs(lead) > 1e-300) {
        const cplx phase = std::conj(lead / std::abs(lead));
        for (auto& ck : p.c) ck *= phase;
    }
    return p;
}

} // namespace

ExtremalResult search_extremal(const MatrixOperand& a, int degree, int restarts,
                               std::uint64_t seed, cplx start_rotation,
                               std::vector<std::pair<int, double>>* trace) {
    if (degree < 1 || degree > 16)
        throw HypothesisViolated("search_extremal: degree must lie in 1..16");
    if (restarts < 1) throw HypothesisViolated("search_extremal: restarts must be >= 1");
    const Contour& c = a.contour();
    if (!convexity_report(c).is_convex)
        throw HypothesisViolated("search_extremal: domain is not convex");
    if (!nrange_inclusion(a).included)
        throw HypothesisViolated("search_extremal: numerical range not inside the domain");

    int evals = 0;
    double best_seen = 0.0;
    auto quality = [&](const std::vector<double>& x) {
        const Poly p = decode(x);
        const BoundarySamples s = sample(c, p);
        const double sup = boundary_sup(s);
        if (!(sup > 1e-14)) return 0.0;
        const CMatrix g = gamma_apply(a, s);
        const double q = g.max_abs() == 0.0 ? 0.0 : operator_norm(g) / sup;
        ++evals;
        if (trace) {
            best_seen = std::max(best_seen, q);
            trace->emplace_back(evals, best_seen);
        }
        return q;
    };
    auto objective = [&](const std::vector<double>& x) { return -quality(x); };

    // start 0: the affine p(z) = z - centroid, padded to the requested degree
    Poly affine;
    affine.c.assign(degree + 1, cplx(0, 0));
    affine.c[0] = -c.node_mean();
    affine.c[1] = 1.0;

    NelderMeadOptions opts;
    opts.max_iterations = 6000;

    double best_value = -1.0;
    double affine_value = 0.0;
    std::vector<double> best_x;
    for (int r = 0; r <= restarts; ++r) {
        Poly start;
        if (r == 0) {
            start = affine;
        } else {
            SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            start.c.resize(degree + 1);
            for (auto& ck : start.c) ck = rng.next_complex_gaussian();
        }
        start = rotate_start(std::move(start), start_rotation);
        auto res = nelder_mead_minimize(objective, encode(start), 0.5, opts);
        const double v = -res.value;
        if (r == 0) affine_value = v;
        if (v > best_value) {
            best_value = v;
            best_x = res.x;
        }
    }

    ExtremalResult out;
    out.degree = degree;
    out.restarts = restarts;
    out.seed = seed;
    out.stalled = best_value < affine_value + 1e-12;

    Poly p = decode(best_x);
    const double sup = boundary_sup(sample(c, p));
    for (auto& ck : p.c) ck /= sup;
    out.f0_poly = p;
    out.f0 = sample(c, p);

    const CMatrix g = gamma_apply(a, out.f0);
    const SingularResult sv = top_singular_eigen(g);
    out.gamma_lb = sv.sigma;
    out.x0 = sv.right;
    out.rho = rho_of(a, out.f0, out.x0);
    out.bound = 1.0 + std::sqrt(std::max(0.0, 1.0 - out.rho));
    out.pairing = inner_product(g * out.x0, out.x0);
    return out;
}

double rho_of(const MatrixOperand& a, const BoundarySamples& f0, const CVector& x0) {
    if (std::abs(boundary_sup(f0) - 1.0) > 1e-9)
        throw HypothesisViolated("rho_of: f0 is not normalized");
    if (std::abs(vector_norm(x0) - 1.0) > 1e-12)
        throw HypothesisViolated("rho_of: x0 is not a unit vector");
    const Contour& c = a.contour();
    const BoundarySamples kf = np_apply(np_matrix(c), f0);
    // h = K(f0)* f0 is analytic; Re <gamma(h) x0, x0> equals the pairing
    // against hat-gamma(Re h) since hat-gamma(Re h) = (gamma(h) + gamma(h)*)/2
    const BoundarySamples h = pointwise_mul(conjugate(kf, true), f0);
    const CMatrix gh = gamma_apply(a, h);
    return inner_product(gh * x0, x0).real();
}

BoundCheckResult bound_check(const MatrixOperand& a, const ExtremalResult& r) {
    BoundCheckResult out;
    out.slack_rho_bound = r.bound - r.gamma_lb;
    out.slack_cp = 1.0 + std::sqrt(2.0) - r.gamma_lb;
    out.measure_residual = (r.gamma_lb - 1.0) * std::abs(r.pairing);
    if (out.slack_rho_bound < -1e-6)
        throw BoundViolated("bound_check: gamma exceeds 1 + sqrt(1 - rho)");
    if (out.slack_cp < -1e-6)
        throw BoundViolated("bound_check: gamma exceeds 1 + sqrt 2");
    if (a.contour().is_circle() && r.gamma_lb > 2.0 + 1e-6)
        throw BoundViolated("bound_check: gamma exceeds 2 on a disk");
    return out;
}

double analytic_config_lower(const Contour& c, int degree, int samples, std::uint64_t seed) {
    if (!convexity_report(c).is_convex)
        throw HypothesisViolated("analytic_config_lower: domain is not convex");
    const NPMatrix np = np_matrix(c);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
        Poly p;
        p.c.resize(degree + 1);
        for (auto& ck : p.c) ck = rng.next_complex_gaussian();
        if (p.is_zero()) continue;
        BoundarySamples f = sample(c, p);
        const double sup = boundary_sup(f);
        for (auto& v : f.values) v /= sup;
        const BoundarySamples kf = np_apply(np, f);
        // Chebyshev radius of this function's range set; the free centre
        // plays the role of the best constant lambda
        const Circle mec = min_enclosing_circle(kf.values, derive_seed(seed, 7919 + s));
        worst = std::max(worst, mec.radius);
    }
    if (worst > 1.0 + 1e-6)
        throw BoundViolated("analytic_config_lower: estimate exceeds 1");
    return worst;
}

} // namespace spectral
