#include "spectral/mapping.hpp"

#include "spectral/cauchy.hpp"
#include "spectral/dlayer.hpp"
#include "spectral/errors.hpp"
#include "spectral/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace spectral {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

void require_hypotheses(const MatrixOperand& a, const BoundarySamples& f, double sup_tol) {
    if (!convexity_report(a.contour()).is_convex)
        throw HypothesisViolated("mapping: domain is not convex");
    if (!nrange_inclusion(a).included)
        throw HypothesisViolated("mapping: numerical range not inside the domain");
    const double sup = boundary_sup(f);
    if (sup > 1.0 + sup_tol)
        throw HypothesisViolated("mapping: sup-norm of f exceeds 1");
}

} // namespace

BoundarySamples normalize_unit_ball(const Contour& c, const Poly& p) {
    if (p.is_zero()) throw ZeroFunction("normalize_unit_ball: zero polynomial");
    const double sup = boundary_sup(sample(c, p));
    Poly q = p;
    for (auto& v : q.c) v /= sup;
    return sample(c, q);
}

MappingReport putinar_sandberg_verify(const MatrixOperand& a, const BoundarySamples& f) {
    require_hypotheses(a, f, 1e-9);
    if (std::abs(boundary_sup(f) - 1.0) > 1e-9)
        throw HypothesisViolated("putinar_sandberg_verify: f is not normalized");

    MappingReport r;
    r.kernel_residual = boundary_sup(analytic_image(a.contour(), f).kf);
    r.kernel_member = r.kernel_residual <= 1e-6;

    const CMatrix gf = gamma_apply(a, f);
    r.okubo_norm = gf.max_abs() == 0.0 ? 0.0 : operator_norm(gf);
    r.numerical_radius = gf.max_abs() == 0.0 ? 0.0 : numerical_radius(gf);

    if (r.numerical_radius < 0.5 * r.okubo_norm - 1e-9)
        throw Error("putinar_sandberg_verify: radius-norm sanity check failed");

    if (r.kernel_member) {
        if (r.numerical_radius > 1.0 + 1e-6)
            throw BoundViolated("putinar_sandberg_verify: W(gamma(f)) leaves the unit disk");
        if (r.okubo_norm > 2.0 + 1e-6)
            throw BoundViolated("putinar_sandberg_verify: ||gamma(f)|| exceeds 2");
    }
    return r;
}

double drury_teardrop_verify(const MatrixOperand& a, const BoundarySamples& f) {
    const Contour& c = a.contour();
    if (!c.is_circle())
        throw HypothesisViolated("drury_teardrop_verify: disk domains only");
    require_hypotheses(a, f, 1e-9);
    if (std::abs(boundary_sup(f) - 1.0) > 1e-9)
        throw HypothesisViolated("drury_teardrop_verify: f is not normalized");

    const cplx f0 = cauchy_interior(c, f, c.spec().center);
    const double rad = 1.0 - std::norm(f0);
    const CMatrix gf = gamma_apply(a, f);

    double slack = 1e300;
    for (int k = 0; k < 720; ++k) {
        const double theta = kTwoPi * k / 720;
        const double h_tear =
            std::max(1.0, std::real(std::polar(1.0, -theta) * f0) + rad);
        const double h_w = gf.max_abs() == 0.0 ? 0.0 : nrange_support(gf, theta);
        slack = std::min(slack, h_tear - h_w);
    }
    if (slack < -1e-6)
        throw BoundViolated("drury_teardrop_verify: W(gamma(f)) leaves the teardrop");
    return slack;
}

CalcInequalities calc_inequalities(const MatrixOperand& a, const BoundarySamples& f) {
    require_hypotheses(a, f, 1e-9);
    const Contour& c = a.contour();

    const BoundarySamples kf = analytic_image(c, f).kf;
    const BoundarySamples kf_conj = conjugate(kf, true); // K(f)* is analytic
    const CMatrix gf = gamma_apply(a, f);
    const double gf_norm = gf.max_abs() == 0.0 ? 0.0 : operator_norm(gf);
    const CMatrix gk = gamma_apply(a, kf_conj);
    const double gk_norm = gk.max_abs() == 0.0 ? 0.0 : operator_norm(gk);

    CalcInequalities out;
    out.crouzeix07_slack = 2.0 + gk_norm - gf_norm;

    const BoundarySamples fkf = pointwise_mul(pointwise_mul(f, kf_conj), f);
    const CMatrix gfkf = gamma_apply(a, fkf);
    const double gfkf_norm = gfkf.max_abs() == 0.0 ? 0.0 : operator_norm(gfkf);
    out.rs18_slack = 2.0 * std::pow(gf_norm, 3) + gfkf_norm * gf_norm - std::pow(gf_norm, 4);

    if (out.crouzeix07_slack < -1e-6 || out.rs18_slack < -1e-6)
        throw BoundViolated("calc_inequalities: a triangle-inequality bound failed");
    return out;
}

CMatrix random_included_matrix(const Contour& c, int dim, double fill, std::uint64_t seed) {
    SplitMix64 rng(seed);
    // triangular draw keeps the spectrum small relative to the numerical range
    CMatrix t(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            t(i, j) = (i == j) ? 0.15 * rng.next_complex_gaussian() : rng.next_complex_gaussian();
    if (dim == 1) t(0, 0) = rng.next_complex_gaussian();

    const cplx z0 = c.is_circle() ? c.spec().center : c.node_mean();
    double scrit = 1e300;
    for (int k = 0; k < 2880; ++k) {
        const double theta = kTwoPi * k / 2880;
        const double hw = nrange_support(t, theta);
        if (hw <= 0.0) continue;
        const double hd = domain_support(c, theta) - std::real(std::polar(1.0, -theta) * z0);
        if (hd <= 0.0) throw HypothesisViolated("random_included_matrix: center outside domain");
        scrit = std::min(scrit, hd / hw);
    }
    t *= fill * scrit;
    for (int i = 0; i < dim; ++i) t(i, i) += z0;
    return t;
}

namespace {

Poly random_poly_about(cplx z0, int degree, bool zero_at_z0, SplitMix64& rng) {
    // sum c_k (z - z0)^k expanded into plain coefficients
    Poly acc{{cplx(0, 0)}};
    Poly power{{cplx(1, 0)}};
    const Poly shift{{-z0, cplx(1, 0)}};
    auto mul = [](const Poly& a, const Poly& b) {
        std::vector<cplx> c(a.c.size() + b.c.size() - 1, cplx(0, 0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
        return Poly{c};
    };
    for (int k = 0; k <= degree; ++k) {
        if (!(k == 0 && zero_at_z0)) {
            const cplx ck = rng.next_complex_gaussian();
            if (acc.c.size() < power.c.size()) acc.c.resize(power.c.size(), cplx(0, 0));
            for (std::size_t i = 0; i < power.c.size(); ++i) acc.c[i] += ck * power.c[i];
        }
        power = mul(power, shift);
    }
    if (acc.is_zero()) acc.c = {cplx(0, 0), cplx(1, 0)};
    return acc;
}

} // namespace

std::vector<TrialRow> run_mapping_ensemble(const Contour& c, const EnsembleConfig& cfg) {
    std::vector<TrialRow> rows;
    rows.reserve(cfg.count);
    for (int t = 0; t < cfg.count; ++t) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, t);
        SplitMix64 rng(trial_seed);
        const double fill = 0.5 + 0.45 * rng.next_double();
        const CMatrix m = random_included_matrix(c, cfg.dim, fill, rng.next());
        MatrixOperand a(m, c);

        const cplx z0 = c.is_circle() ? c.spec().center : c.node_mean();
        const Poly p = random_poly_about(z0, cfg.degree, cfg.zero_at_center, rng);
        const BoundarySamples f = normalize_unit_ball(c, p);

        TrialRow row;
        row.seed = trial_seed;
        row.dim = cfg.dim;
        row.degree = cfg.degree;
        row.report = putinar_sandberg_verify(a, f);
        if (c.is_circle()) row.report.teardrop_slack = drury_teardrop_verify(a, f);
        const CalcInequalities ci = calc_inequalities(a, f);
        row.report.crouzeix07_slack = ci.crouzeix07_slack;
        row.report.rs18_slack = ci.rs18_slack;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_ensemble_csv(const std::vector<TrialRow>& rows, std::ostream& out) {
    out << "seed,dim,degree,kernel_residual,numerical_radius,okubo_norm,"
           "teardrop_slack,crouzeix07_slack,rs18_slack\n";
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (const auto& r : rows) {
        out << r.seed << "," << r.dim << "," << r.degree << ",";
        put(r.report.kernel_residual);
        out << ",";
        put(r.report.numerical_radius);
        out << ",";
        put(r.report.okubo_norm);
        out << ",";
        if (r.report.teardrop_slack) put(*r.report.teardrop_slack);
        out << ",";
        put(r.report.crouzeix07_slack);
        out << ",";
        put(r.report.rs18_slack);
        out << "\n";
    }
}

} // namespace spectral
