#include "spectral/selftest.hpp"

#include "spectral/cauchy.hpp"
#include "spectral/dlayer.hpp"
#include "spectral/errors.hpp"
#include "spectral/extremal.hpp"
#include "spectral/mapping.hpp"
#include "spectral/rng.hpp"
#include "spectral/smoothing.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

namespace spectral {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

Poly random_poly(int degree, SplitMix64& rng) {
    std::vector<cplx> c(degree + 1);
    for (auto& v : c) v = rng.next_complex_gaussian();
    return Poly{c};
}

CMatrix nilpotent2(double b) {
    CMatrix m(2);
    m(0, 1) = b;
    return m;
}

struct Runner {
    std::vector<CriterionResult>& out;
    std::ostream* progress;

    void run(int id, const std::string& name, const std::function<std::string()>& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        try {
            r.detail = body();
            r.pass = true;
        } catch (const std::exception& e) {
            r.detail = e.what();
            r.pass = false;
        }
        if (progress)
            (*progress) << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": "
                        << r.name << " -- " << r.detail << "\n"
                        << std::flush;
        out.push_back(std::move(r));
    }
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Error(what);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

} // namespace

std::vector<CriterionResult> run_acceptance_suite(std::ostream* progress) {
    std::vector<CriterionResult> results;
    Runner runner{results, progress};

    const ContourSpec circle_spec = ContourSpec::make_circle({0, 0}, 1.0, 256);
    const ContourSpec ellipse_spec = ContourSpec::make_ellipse({0, 0}, 2.0, 1.0, 256);
    const ContourSpec star_spec = ContourSpec::make_star(1.0, 0.3, 3, 256);

    runner.run(1, "partition of unity at interior/boundary/exterior probes", [&] {
        double worst = 0.0;
        for (const auto& spec : {circle_spec, ellipse_spec, star_spec}) {
            Contour c = make_contour(spec);
            auto one = constant_samples(c, 1.0);
            const cplx zin = c.node_mean();
            const cplx zout = zin + 2.5 * c.diameter();
            worst = std::max(worst, std::abs(dl_evaluate(c, one, zin, Region::interior) - 2.0));
            worst = std::max(worst, std::abs(dl_evaluate(c, one, zout, Region::exterior)));
            for (int i = 0; i < c.size(); i += c.size() / 8)
                worst = std::max(worst, std::abs(dl_evaluate_boundary(c, one, i) - 1.0));
        }
        require(worst <= 1e-8, "partition residual " + fmt(worst) + " exceeds 1e-8");
        return "worst residual " + fmt(worst);
    });

    runner.run(2, "convexity characterized by kernel sign and operator norm", [&] {
        std::ostringstream detail;
        for (int n : {256, 512}) {
            for (auto spec : {circle_spec, ellipse_spec}) {
                spec.nodes = n;
                auto r = convexity_report(make_contour(spec));
                require(r.is_convex, "convex family misclassified");
                require(std::abs(r.np_norm - 1.0) <= 1e-6, "np norm off 1 on a convex family");
                require(r.min_kernel >= -1e-8, "kernel negative on a convex family");
            }
            auto spec = star_spec;
            spec.nodes = n;
            auto r = convexity_report(make_contour(spec));
            require(!r.is_convex, "star misclassified as convex");
            require(r.np_norm > 1.05, "star np norm not above 1.05");
            require(r.min_kernel < 0.0, "star kernel not negative");
            if (n == 512) detail << "star np norm " << fmt(r.np_norm);
        }
        return detail.str();
    });

    runner.run(3, "disk collapse K(f) = f(center) on three circles", [&] {
        SplitMix64 rng(2026);
        double worst = 0.0;
        for (const auto& spec : {ContourSpec::make_circle({0, 0}, 1.0, 256),
                                 ContourSpec::make_circle({0.3, 0.2}, 0.7, 256),
                                 ContourSpec::make_circle({-1, -1}, 2.5, 256)}) {
            Contour c = make_contour(spec);
            for (int t = 0; t < 20; ++t) {
                auto img = analytic_image(c, sample(c, random_poly(8, rng)));
                worst = std::max(worst, img.disk_residual.value());
            }
        }
        require(worst <= 1e-8, "disk collapse residual " + fmt(worst));
        return "worst residual " + fmt(worst);
    });

    runner.run(4, "Plemelj and jump relations at N = 512", [&] {
        double worst = 0.0;
        for (auto spec : {circle_spec, ellipse_spec, star_spec}) {
            spec.nodes = 512;
            Contour c = make_contour(spec);
            SplitMix64 rng(11 + spec.nodes);
            const cplx far_pole = c.node_mean() + cplx(1.6, 1.1) * c.diameter();
            const std::vector<BoundarySamples> data = {
                sample(c, random_poly(5, rng)),
                sample(c, RationalGen{Poly{{cplx(1, 0)}}, Poly{{-far_pole, cplx(1, 0)}}}, true)};
            for (const auto& phi : data) {
                auto r = plemelj_residuals(c, phi);
                worst = std::max({worst, r.interior_err, r.exterior_err, r.jump_err});
            }
        }
        require(worst <= 1e-6, "plemelj residual " + fmt(worst));
        return "worst residual " + fmt(worst);
    });

    Contour circle = make_contour(circle_spec);
    Contour ellipse = make_contour(ellipse_spec);

    runner.run(5, "operator total mass equals 2", [&] {
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            const int dim = 2 + t % 5;
            MatrixOperand a(random_included_matrix(circle, dim, 0.8, derive_seed(500, t)), circle);
            const CMatrix m = sym_calculus_apply(a, constant_samples(circle, 1.0));
            worst = std::max(worst, (m - 2.0 * CMatrix::identity(dim)).frobenius_norm());
        }
        require(worst <= 1e-8, "total mass residual " + fmt(worst));
        return "worst residual " + fmt(worst);
    });

    runner.run(6, "symmetrized calculus decomposition", [&] {
        double worst = 0.0;
        const NPMatrix np = np_matrix(circle);
        for (int t = 0; t < 20; ++t) {
            const int dim = 2 + t % 5;
            MatrixOperand a(random_included_matrix(circle, dim, 0.8, derive_seed(600, t)), circle);
            SplitMix64 rng(derive_seed(601, t));
            for (int k = 0; k < 10; ++k) {
                const BoundarySamples f = sample(circle, random_poly(1 + k % 6, rng));
                const CMatrix lhs = sym_calculus_apply(a, f); // throws past 1e-7
                const CMatrix rhs =
                    gamma_apply(a, conjugate(np_apply(np, f), true)).adjoint() + gamma_apply(a, f);
                worst = std::max(worst, (lhs - rhs).frobenius_norm());
            }
        }
        require(worst <= 1e-7, "decomposition residual " + fmt(worst));
        return "worst residual " + fmt(worst);
    });

    runner.run(7, "inclusion verdicts agree on straddling ensembles", [&] {
        int included_count = 0;
        double worst_sym = 0.0;
        for (int t = 0; t < 100; ++t) {
            SplitMix64 rng(derive_seed(700, t));
            const int dim = 2 + static_cast<int>(rng.next() % 5);
            CMatrix g(dim);
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j)
                    g(i, j) = (i == j) ? 0.15 * rng.next_complex_gaussian()
                                       : rng.next_complex_gaussian();
            double scrit = 1e300;
            for (int k = 0; k < 2880; ++k) {
                const double theta = kTwoPi * k / 2880;
                const double hw = nrange_support(g, theta);
                if (hw <= 0.0) continue;
                scrit = std::min(scrit, domain_support(ellipse, theta) / hw);
            }
            for (double margin : {-1e-3, 1e-3}) {
                CMatrix m = g;
                m *= scrit * (1.0 + margin);
                MatrixOperand a(m, ellipse);
                auto rep = nrange_inclusion(a); // throws on verdict disagreement
                require(rep.included == (margin < 0.0), "verdict does not match the margin");
                if (rep.included) {
                    ++included_count;
                    worst_sym = std::max(worst_sym, std::abs(rep.sym_norm_at_one - 2.0));
                }
            }
        }
        require(included_count == 100, "included count unexpected");
        require(worst_sym <= 1e-6, "sym norm at one off 2 by " + fmt(worst_sym));
        return "200 verdicts on 100 matrices, sym norm residual " + fmt(worst_sym);
    });

    double ensemble_worst_slack = 1e300; // shared with criterion 9

    runner.run(8, "mapping theorems on the disk", [&] {
        EnsembleConfig cfg;
        cfg.count = 100;
        cfg.dim = 3;
        cfg.degree = 5;
        cfg.seed = 808;
        cfg.zero_at_center = true;
        double worst_radius = 0.0, worst_norm = 0.0, worst_tear = 1e300;
        for (const auto& row : run_mapping_ensemble(circle, cfg)) {
            require(row.report.kernel_member, "centered polynomial left the kernel");
            worst_radius = std::max(worst_radius, row.report.numerical_radius);
            worst_norm = std::max(worst_norm, row.report.okubo_norm);
            worst_tear = std::min(worst_tear, row.report.teardrop_slack.value());
            ensemble_worst_slack = std::min(
                {ensemble_worst_slack, row.report.crouzeix07_slack, row.report.rs18_slack});
        }
        require(worst_radius <= 1.0 + 1e-6, "numerical radius " + fmt(worst_radius));
        require(worst_norm <= 2.0 + 1e-6, "okubo norm " + fmt(worst_norm));

        cfg.zero_at_center = false;
        cfg.seed = 809;
        for (const auto& row : run_mapping_ensemble(circle, cfg)) {
            worst_tear = std::min(worst_tear, row.report.teardrop_slack.value());
            ensemble_worst_slack = std::min(
                {ensemble_worst_slack, row.report.crouzeix07_slack, row.report.rs18_slack});
        }
        require(worst_tear >= -1e-6, "teardrop slack " + fmt(worst_tear));

        MatrixOperand nil(nilpotent2(2.0), circle);
        auto eq = putinar_sandberg_verify(nil, normalize_unit_ball(circle, Poly{{0.0, cplx(1, 0)}}));
        require(std::abs(eq.numerical_radius - 1.0) <= 1e-6, "equality-case radius");
        require(std::abs(eq.okubo_norm - 2.0) <= 1e-6, "equality-case norm");
        return "radius<=" + fmt(worst_radius) + " norm<=" + fmt(worst_norm) +
               " teardrop>=" + fmt(worst_tear);
    });

    runner.run(9, "triangle-inequality bounds and the interior inverse norm", [&] {
        double worst = ensemble_worst_slack; // carries the criterion-8 ensembles
        for (const Contour* domain : {&circle, &ellipse}) {
            EnsembleConfig cfg;
            cfg.count = 50;
            cfg.dim = 3;
            cfg.degree = 5;
            cfg.seed = domain == &circle ? 900 : 901;
            cfg.zero_at_center = false;
            for (const auto& row : run_mapping_ensemble(*domain, cfg)) {
                worst = std::min(worst, row.report.crouzeix07_slack);
                worst = std::min(worst, row.report.rs18_slack);
            }
        }
        require(worst >= -1e-6, "inequality slack " + fmt(worst));
        auto inv = interior_inverse_norm(circle);
        require(std::abs(inv.inv_norm - 1.5) <= 0.01, "disk inverse norm " + fmt(inv.inv_norm));
        require(std::abs(inv.delyon_bound - 257.5) <= 1e-9, "delyon bound changed");
        require(inv.inv_norm <= inv.delyon_bound, "inverse norm above the bound");
        return "slack>=" + fmt(worst) + " inv_norm " + fmt(inv.inv_norm);
    });

    runner.run(10, "extremal searches respect the spectral-constant bounds", [&] {
        const double np_circle = np_norm(circle);
        const double np_ellipse = np_norm(ellipse);
        std::ostringstream detail;

        MatrixOperand nil(nilpotent2(2.0), circle);
        auto r1 = search_extremal(nil, 3, 8, 42);
        require(std::abs(r1.gamma_lb - 2.0) <= 1e-4, "nilpotent gamma " + fmt(r1.gamma_lb));
        require(std::abs(r1.rho) <= 1e-4, "nilpotent rho " + fmt(r1.rho));
        bound_check(nil, r1);
        require(std::abs(r1.rho) <= np_circle + 1e-6, "rho above np norm");

        CMatrix normal(2);
        normal(0, 0) = 0.5;
        normal(1, 1) = -0.5;
        MatrixOperand nrm(normal, circle);
        auto r2 = search_extremal(nrm, 3, 8, 7);
        require(std::abs(r2.gamma_lb - 1.0) <= 1e-6, "normal gamma " + fmt(r2.gamma_lb));
        bound_check(nrm, r2);
        require(std::abs(r2.rho) <= np_circle + 1e-6, "rho above np norm");

        Contour half_disk = make_contour(ContourSpec::make_circle({0, 0}, 0.5, 256));
        MatrixOperand nil_half(nilpotent2(1.0), half_disk);
        auto r3 = search_extremal(nil_half, 2, 6, 3);
        require(std::abs(r3.gamma_lb - 2.0) <= 1e-4, "rescaled gamma " + fmt(r3.gamma_lb));
        bound_check(nil_half, r3);
        require(std::abs(r3.rho) <= np_norm(half_disk) + 1e-6, "rho above np norm");

        MatrixOperand rnd(random_included_matrix(ellipse, 3, 0.9, 1001), ellipse);
        auto r4 = search_extremal(rnd, 4, 6, 5);
        bound_check(rnd, r4);
        require(std::abs(r4.rho) <= np_ellipse + 1e-6, "ellipse rho above np norm");

        const double aconf = analytic_config_lower(ellipse, 6, 200, 12);
        require(aconf < 1.0, "analytic configuration estimate " + fmt(aconf));
        detail << "gamma {" << fmt(r1.gamma_lb) << ", " << fmt(r2.gamma_lb) << ", "
               << fmt(r3.gamma_lb) << ", " << fmt(r4.gamma_lb) << "}, a-config " << fmt(aconf);
        return detail.str();
    });

    runner.run(11, "smooth approximation ladder and spectral stability", [&] {
        SmoothingParams p;
        p.epsilon = 0.4;
        p.levels = 4;
        p.grid_h = 0.4 / 64;

        std::ostringstream detail;

        // one-point target
        PointSet origin{{cplx(0, 0)}, false};
        auto dom0 = build_domains(origin, p);
        nesting_report(dom0, origin, p); // throws on violation
        CMatrix a0(1);
        auto t0 = spectral_stability(a0, Poly{{cplx(0.3, 0), cplx(1, 0)}}, dom0, origin);
        for (std::size_t i = 1; i < t0.rows.size(); ++i)
            require(t0.rows[i].ratio >= t0.rows[i - 1].ratio - 1e-9, "ratios not monotone");

        // convex hull target
        PointSet hull{{cplx(0, 0), cplx(1, 0), cplx(0, 1)}, true};
        auto dom1 = build_domains(hull, p);
        auto rep1 = nesting_report(dom1, hull, p);
        for (const auto& row : rep1.levels)
            require(row.min_curvature >= -1e-6, "hull level lost convexity");
        CMatrix a1(3);
        a1(0, 0) = {0.2, 0.1};
        a1(1, 1) = {0.5, 0.2};
        a1(2, 2) = {0.1, 0.4};
        auto t1 = spectral_stability(a1, Poly{{0.0, 0.0, cplx(1, 0)}}, dom1, hull);
        for (std::size_t i = 1; i < t1.rows.size(); ++i)
            require(t1.rows[i].ratio >= t1.rows[i - 1].ratio - 1e-9, "ratios not monotone");

        // disk boundary sample recovers the disk constant 2
        PointSet disk_sample{{}, false};
        for (int k = 0; k < 64; ++k)
            disk_sample.points.push_back(std::polar(1.0, kTwoPi * k / 64));
        auto dom2 = build_domains(disk_sample, p);
        nesting_report(dom2, disk_sample, p);
        auto t2 = spectral_stability(nilpotent2(2.0), Poly{{0.0, cplx(1, 0)}}, dom2, disk_sample);
        for (std::size_t i = 1; i < t2.rows.size(); ++i)
            require(t2.rows[i].ratio >= t2.rows[i - 1].ratio - 1e-9, "ratios not monotone");
        require(std::abs(t2.extrapolated_ratio - 2.0) <= 0.05 * 2.0,
                "disk ratio " + fmt(t2.extrapolated_ratio) + " not within 5% of 2");
        detail << "disk-run extrapolated ratio " << fmt(t2.extrapolated_ratio);
        return detail.str();
    });

    return results;
}

} // namespace spectral
