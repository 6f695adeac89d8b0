#pragma once

#include "spectral/contour.hpp"
#include "spectral/linalg.hpp"
#include "spectral/samples.hpp"

#include <vector>

namespace spectral {

// Compact target set: finitely many points, optionally read as the convex
// hull of the points.
struct PointSet {
    std::vector<cplx> points;
    bool convex_hull_mode = false;
};

struct SmoothingParams {
    double epsilon = 0.4; // neighbourhood scale; level n uses epsilon/n
    int levels = 3;
    double grid_h = 0.0;    // grid spacing; must be <= s_1 / 4
    double s_factor = 0.5;  // mollifier radius s_n = s_factor * eps/(2n(n+1))
    int fourier_modes = 32; // curve-fit modes
    int contour_nodes = 256;

    double mollifier_radius(int level) const;
    double admissible_width(int level) const; // eps/(2n(n+1))
};

struct ScalarField {
    double x0 = 0.0, y0 = 0.0; // lower-left corner
    double h = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> v; // row-major, index iy * nx + ix

    double at(int ix, int iy) const { return v[static_cast<std::size_t>(iy) * nx + ix]; }
    double& at(int ix, int iy) { return v[static_cast<std::size_t>(iy) * nx + ix]; }
    cplx pos(int ix, int iy) const { return {x0 + h * ix, y0 + h * iy}; }
};

// Exact Euclidean distance to the point set (or to its convex hull) on a
// grid covering the set padded by 2 epsilon.
ScalarField distance_field(const PointSet& x, const SmoothingParams& p);

// distance to the closed point set / hull, in closed form
double set_distance(const PointSet& x, cplx z);

struct SmoothLevel {
    Contour contour;
    double s = 0.0;            // mollifier radius used
    double t = 0.0;            // accepted level value
    double offset = 0.0;       // neighbourhood radius eps/(level+1)
    double fit_residual = 0.0; // max distance from polyline to fitted curve
    std::vector<cplx> level_points; // raw extracted level set (closed)
};

// The nested smooth-domain ladder: level n extracts the t_n sublevel set of
// the mollified distance to the eps/(n+1) neighbourhood and fits a Fourier
// curve. In hull mode the fit goes through the support function smoothed by
// a positive (Jackson) kernel, which preserves convexity exactly.
std::vector<SmoothLevel> build_domains(const PointSet& x, const SmoothingParams& p);

struct NestingLevelReport {
    int level = 0;
    bool x_inside = false;
    bool nested_in_previous = true;
    double hausdorff = 0.0;     // d_H(closed domain, closed X)
    double hausdorff_bound = 0.0; // eps/n + 2h
    double min_curvature = 0.0;
};

struct NestingReport {
    std::vector<NestingLevelReport> levels;
    bool ok = false;
};

NestingReport nesting_report(const std::vector<SmoothLevel>& domains, const PointSet& x,
                             const SmoothingParams& p);

struct StabilityRow {
    int level = 0;
    double sup_f = 0.0;          // sup |f| over the fitted level boundary
    double raw_sup = 0.0;        // sup |f| over the raw extracted level set
    double gamma_residual = 0.0; // ||gamma_n(f) - f(A)||_F
    double ratio = 0.0;          // ||f(A)|| / sup_f
};

struct StabilityTable {
    std::vector<StabilityRow> rows;
    double norm_fa = 0.0;
    double x_boundary_sup = 0.0;
    double extrapolated_sup = 0.0;
    double extrapolated_ratio = 0.0;
};

// Tabulates sup |f| and ||f(A)|| across the ladder. Asserts the sups are
// non-increasing, that each gamma agrees with direct polynomial arithmetic,
// and that the sups extrapolate (in 1/level) to the sup over the target set
// within 5% of the observed first-to-last decrease.
StabilityTable spectral_stability(const CMatrix& a, const Poly& f,
                                  const std::vector<SmoothLevel>& domains, const PointSet& x);

} // namespace spectral
