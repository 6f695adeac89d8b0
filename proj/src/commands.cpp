#include "spectral/commands.hpp"

#include "spectral/cauchy.hpp"
#include "spectral/dlayer.hpp"
#include "spectral/errors.hpp"
#include "spectral/extremal.hpp"
#include "spectral/mapping.hpp"
#include "spectral/selftest.hpp"
#include "spectral/smoothing.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace spectral {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

Contour scene_contour(const Scene& scene, const CliOptions& opts) {
    if (!scene.contour) throw ValidationError("scene: contour block required");
    ContourSpec spec = *scene.contour;
    if (opts.nodes) spec.nodes = *opts.nodes;
    return make_contour(spec);
}

MatrixOperand scene_operand(const Scene& scene, const Contour& c) {
    if (!scene.matrix) throw ValidationError("scene: matrix block required");
    return MatrixOperand(*scene.matrix, c);
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& block_seed,
                           const CliOptions& opts) {
    if (opts.seed) return *opts.seed;
    if (block_seed) return *block_seed;
    throw ValidationError("scene: seed required for stochastic commands");
}

std::ofstream open_artifact(const CliOptions& opts, const std::string& name) {
    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);
    std::ofstream out(fs::path(opts.out_dir) / name, std::ios::trunc);
    if (!out) throw Error("cannot write artifact " + name);
    return out;
}

void write_contour_csv(const Contour& c, std::ostream& out) {
    out << "t,re,im,nre,nim,curvature,weight\n";
    for (int j = 0; j < c.size(); ++j)
        out << fmt_g17(kTwoPi * j / c.size()) << "," << fmt_g17(c.node(j).real()) << ","
            << fmt_g17(c.node(j).imag()) << "," << fmt_g17(c.normal(j).real()) << ","
            << fmt_g17(c.normal(j).imag()) << "," << fmt_g17(c.curvature(j)) << ","
            << fmt_g17(c.weight(j)) << "\n";
}

void write_nrange_csv(const CMatrix& m, std::ostream& out) {
    out << "theta,support,point_re,point_im\n";
    for (int k = 0; k < 720; ++k) {
        const double theta = kTwoPi * k / 720;
        const cplx u = std::polar(1.0, -theta);
        const int d = m.dim();
        CMatrix t(d);
        for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) t(p, q) = 0.5 * (u * m(p, q) + std::conj(u * m(q, p)));
        auto e = hermitian_eigen(HermitianMatrix::from(t, 1e-10));
        CVector x(d);
        for (int i = 0; i < d; ++i) x[i] = e.vectors(i, d - 1);
        const cplx point = inner_product(m * x, x);
        out << fmt_g17(theta) << "," << fmt_g17(e.values.back()) << ","
            << fmt_g17(point.real()) << "," << fmt_g17(point.imag()) << "\n";
    }
}

void cmd_convexity(const Scene& scene, const CliOptions& opts, Report& rep) {
    Contour c = scene_contour(scene, opts);
    rep.nodes = c.size();
    const NPMatrix np = np_matrix(c);
    rep.add_cap("row_sum_defect", np.max_row_sum_defect(), 0.0, rep.tolerances.row_sum);
    auto conv = convexity_report(c);
    rep.add("is_convex", conv.is_convex ? 1.0 : 0.0, 0.0, true);
    if (conv.is_convex) {
        rep.add_near("np_norm", conv.np_norm, 1.0, rep.tolerances.np_norm_convex);
        rep.add_floor("min_kernel", conv.min_kernel, 0.0, rep.tolerances.kernel_floor);
        auto inv = interior_inverse_norm(c);
        rep.add("delyon_bound", inv.delyon_bound, 0.0, true);
        rep.add_cap("inv_norm_vs_delyon", inv.inv_norm, inv.delyon_bound, 0.0);
    } else {
        rep.add("np_norm", conv.np_norm, 0.0, conv.np_norm > 1.0);
        rep.add("min_kernel", conv.min_kernel, 0.0, conv.min_kernel < 0.0);
    }
    if (opts.csv && !opts.out_dir.empty()) {
        auto f1 = open_artifact(opts, "contour.csv");
        write_contour_csv(c, f1);
        auto f2 = open_artifact(opts, "np_matrix.csv");
        write_np_csv(np, f2);
    }
}

void cmd_transforms(const Scene& scene, const CliOptions& opts, Report& rep) {
    Contour c = scene_contour(scene, opts);
    rep.nodes = c.size();
    std::vector<RationalGen> gens = scene.functions;
    if (gens.empty())
        gens.push_back(RationalGen{Poly{{0.0, 0.0, 0.0, cplx(1, 0)}}, Poly{{cplx(1, 0)}}});
    int idx = 0;
    for (const auto& g : gens) {
        const auto r = plemelj_residuals(c, sample(c, g));
        const std::string tag = "f" + std::to_string(idx++);
        rep.add_cap(tag + "_interior_err", r.interior_err, 0.0, rep.tolerances.plemelj);
        rep.add_cap(tag + "_exterior_err", r.exterior_err, 0.0, rep.tolerances.plemelj);
        rep.add_cap(tag + "_jump_err", r.jump_err, 0.0, rep.tolerances.plemelj);
    }
    if (opts.csv && !opts.out_dir.empty()) {
        auto f = open_artifact(opts, "contour.csv");
        write_contour_csv(c, f);
    }
}

void cmd_calculus(const Scene& scene, const CliOptions& opts, Report& rep) {
    Contour c = scene_contour(scene, opts);
    rep.nodes = c.size();
    MatrixOperand a = scene_operand(scene, c);
    rep.add("spectrum_inside", a.inside_count(), 0.0, a.inside_count() == a.dim());

    auto inc = nrange_inclusion(a);
    rep.add("included", inc.included ? 1.0 : 0.0, 0.0, true);
    if (inc.included) {
        rep.add_floor("min_eig_P", inc.min_eig_p, 0.0, rep.tolerances.inclusion_eig);
        rep.add_near("sym_norm_at_one", inc.sym_norm_at_one, 2.0, rep.tolerances.sym_norm);
    } else {
        rep.add("min_eig_P", inc.min_eig_p, 0.0, true);
    }
    rep.add("support_slack", inc.support_slack, rep.tolerances.inclusion_support, true);

    const CMatrix mass = sym_calculus_apply(a, constant_samples(c, 1.0));
    rep.add_cap("total_mass_residual",
                (mass - 2.0 * CMatrix::identity(a.dim())).frobenius_norm(), 0.0,
                rep.tolerances.total_mass);

    const NPMatrix np = np_matrix(c);
    int idx = 0;
    for (const auto& g : scene.functions) {
        const BoundarySamples f = sample(c, g);
        const CMatrix lhs = sym_calculus_apply(a, f);
        const CMatrix rhs =
            gamma_apply(a, conjugate(np_apply(np, f), true)).adjoint() + gamma_apply(a, f);
        rep.add_cap("decomposition_f" + std::to_string(idx++), (lhs - rhs).frobenius_norm(), 0.0,
                    rep.tolerances.decomposition);
    }
    if (opts.csv && !opts.out_dir.empty()) {
        auto f = open_artifact(opts, "nrange_sweep.csv");
        write_nrange_csv(a.matrix(), f);
    }
}

void cmd_mapping(const Scene& scene, const CliOptions& opts, Report& rep) {
    Contour c = scene_contour(scene, opts);
    rep.nodes = c.size();
    if (!scene.ensemble) throw ValidationError("scene: ensemble block required for mapping");
    EnsembleConfig cfg;
    cfg.count = scene.ensemble->count;
    cfg.dim = scene.ensemble->dim;
    cfg.degree = scene.ensemble->degree;
    cfg.seed = require_seed(scene.ensemble->seed, opts);
    cfg.zero_at_center = scene.ensemble->zero_at_center;
    rep.seed = cfg.seed;

    const auto rows = run_mapping_ensemble(c, cfg);
    double worst_radius = 0.0, worst_norm = 0.0, worst_c07 = 1e300, worst_rs = 1e300;
    double worst_tear = 1e300;
    bool all_kernel = true;
    for (const auto& r : rows) {
        worst_norm = std::max(worst_norm, r.report.okubo_norm);
        worst_c07 = std::min(worst_c07, r.report.crouzeix07_slack);
        worst_rs = std::min(worst_rs, r.report.rs18_slack);
        all_kernel = all_kernel && r.report.kernel_member;
        if (r.report.kernel_member)
            worst_radius = std::max(worst_radius, r.report.numerical_radius);
        if (r.report.teardrop_slack)
            worst_tear = std::min(worst_tear, *r.report.teardrop_slack);
    }
    if (cfg.zero_at_center && c.is_circle()) {
        rep.add("kernel_members", all_kernel ? 1.0 : 0.0, 0.0, all_kernel);
        rep.add_cap("numerical_radius_max", worst_radius, 1.0, rep.tolerances.radius_bound);
    }
    if (c.is_circle()) {
        rep.add_cap("okubo_norm_max", worst_norm, 2.0, rep.tolerances.okubo);
        rep.add_floor("teardrop_slack_min", worst_tear, 0.0, rep.tolerances.teardrop);
    }
    rep.add_floor("crouzeix07_slack_min", worst_c07, 0.0, rep.tolerances.ineq_slack);
    rep.add_floor("rs18_slack_min", worst_rs, 0.0, rep.tolerances.ineq_slack);

    if (opts.csv && !opts.out_dir.empty()) {
        auto f = open_artifact(opts, "ensemble.csv");
        write_ensemble_csv(rows, f);
        if (c.is_circle() && scene.matrix) {
            // teardrop boundary for the scene function, if any
            MatrixOperand a = scene_operand(scene, c);
            if (!scene.functions.empty()) {
                const BoundarySamples fs = normalize_unit_ball(c, scene.functions[0].num);
                const cplx f0 = cauchy_interior(c, fs, c.spec().center);
                auto out = open_artifact(opts, "teardrop.csv");
                out << "theta,h_tear\n";
                for (int k = 0; k < 720; ++k) {
                    const double theta = kTwoPi * k / 720;
                    const double h = std::max(
                        1.0, std::real(std::polar(1.0, -theta) * f0) + 1.0 - std::norm(f0));
                    out << fmt_g17(theta) << "," << fmt_g17(h) << "\n";
                }
            }
        }
    }
}

void cmd_extremal(const Scene& scene, const CliOptions& opts, Report& rep) {
    Contour c = scene_contour(scene, opts);
    rep.nodes = c.size();
    MatrixOperand a = scene_operand(scene, c);
    if (!scene.extremal) throw ValidationError("scene: extremal block required");
    const std::uint64_t seed = require_seed(scene.extremal->seed, opts);
    rep.seed = seed;

    std::vector<std::pair<int, double>> trace;
    auto r = search_extremal(a, scene.extremal->degree, scene.extremal->restarts, seed,
                             cplx(1, 0), opts.csv ? &trace : nullptr);
    auto b = bound_check(a, r);
    rep.add("gamma_lb", r.gamma_lb, 0.0, true);
    rep.add("rho", r.rho, 0.0, true);
    rep.add("stalled", r.stalled ? 1.0 : 0.0, 0.0, true);
    rep.add_floor("slack_rho_bound", b.slack_rho_bound, 0.0, rep.tolerances.gamma_bound_slack);
    rep.add_floor("slack_cp", b.slack_cp, 0.0, rep.tolerances.gamma_bound_slack);
    if (c.is_circle())
        rep.add_cap("gamma_lb_disk", r.gamma_lb, 2.0, rep.tolerances.gamma_bound_slack);
    rep.add("measure_residual", b.measure_residual, 0.0, true);
    rep.add_cap("rho_vs_np_norm", std::abs(r.rho), np_norm(c), rep.tolerances.rho_np);

    if (opts.csv && !opts.out_dir.empty()) {
        auto f = open_artifact(opts, "extremal_trace.csv");
        f << "evaluation,best\n";
        for (const auto& [e, v] : trace) f << e << "," << fmt_g17(v) << "\n";
    }
}

void cmd_smooth(const Scene& scene, const CliOptions& opts, Report& rep) {
    if (!scene.smoothing) throw ValidationError("scene: smoothing block required");
    const auto& block = *scene.smoothing;
    rep.nodes = block.params.contour_nodes;

    auto domains = build_domains(block.points, block.params);
    auto nest = nesting_report(domains, block.points, block.params); // throws on violation
    for (const auto& row : nest.levels) {
        const std::string tag = "level" + std::to_string(row.level);
        rep.add_cap(tag + "_hausdorff", row.hausdorff, row.hausdorff_bound, 0.0);
        if (block.points.convex_hull_mode)
            rep.add_floor(tag + "_min_curvature", row.min_curvature, 0.0,
                          rep.tolerances.convexity_floor);
    }

    if (scene.matrix && !scene.functions.empty()) {
        auto table =
            spectral_stability(*scene.matrix, scene.functions[0].num, domains, block.points);
        rep.add("norm_fa", table.norm_fa, 0.0, true);
        rep.add("extrapolated_ratio", table.extrapolated_ratio, 0.0, true);
        bool monotone = true;
        for (std::size_t i = 1; i < table.rows.size(); ++i)
            monotone = monotone && table.rows[i].ratio >= table.rows[i - 1].ratio - 1e-9;
        rep.add("ratios_monotone", monotone ? 1.0 : 0.0, 0.0, monotone);
    }

    if (opts.csv && !opts.out_dir.empty()) {
        int level = 1;
        for (const auto& d : domains) {
            auto f = open_artifact(opts, "smooth_level" + std::to_string(level) + ".csv");
            write_contour_csv(d.contour, f);
            // scene fragment with the fitted coefficients; exported at a node
            // count that resolves the uneven support parametrization
            auto frag = open_artifact(opts, "smooth_level" + std::to_string(level) + ".scene");
            frag << "contour {\n  family = fourier\n  min_mode = "
                 << d.contour.spec().fourier_min_mode
                 << "\n  nodes = " << std::max(1024, d.contour.size()) << "\n  coeffs =";
            for (const auto& cf : d.contour.spec().fourier_coeffs)
                frag << " " << fmt_g17(cf.real()) << " " << fmt_g17(cf.imag());
            frag << "\n}\n";
            ++level;
        }
    }
}

void cmd_selftest(const CliOptions&, Report& rep) {
    auto results = run_acceptance_suite(&std::cerr);
    for (const auto& r : results)
        rep.add("criterion_" + std::to_string(r.id), r.pass ? 1.0 : 0.0, 0.0, r.pass);
}

} // namespace

Report run_command(const std::string& command, const Scene& scene, const CliOptions& opts) {
    Report rep;
    rep.command = command;
    rep.scene_path = scene.source_path;
    rep.digest = scene.digest;
    rep.tolerances = scene.tolerances;
    if (opts.seed) rep.seed = opts.seed;

    const auto start = std::chrono::steady_clock::now();
    try {
        if (command == "convexity") cmd_convexity(scene, opts, rep);
        else if (command == "transforms") cmd_transforms(scene, opts, rep);
        else if (command == "calculus") cmd_calculus(scene, opts, rep);
        else if (command == "mapping") cmd_mapping(scene, opts, rep);
        else if (command == "extremal") cmd_extremal(scene, opts, rep);
        else if (command == "smooth") cmd_smooth(scene, opts, rep);
        else if (command == "selftest") cmd_selftest(opts, rep);
        else throw ValidationError("unknown command: " + command);
    } catch (const Error& e) {
        rep.errors.push_back(e.what());
    }
    rep.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    if (!opts.out_dir.empty()) write_report(rep, opts.out_dir);
    return rep;
}

} // namespace spectral
