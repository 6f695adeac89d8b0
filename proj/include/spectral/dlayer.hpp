#pragma once

#include "spectral/contour.hpp"
#include "spectral/samples.hpp"

#include <iosfwd>
#include <optional>

namespace spectral {

// Double-layer potential P(sigma_j, z) = (1/pi) Re(n_j / (sigma_j - z)).
// When z coincides with the node the continuous limit along the curve,
// kappa_j / (2 pi), is returned.
double dl_kernel(const Contour& c, int j, cplx z);

// Nystroem matrix of the singular double-layer transform:
// K[i][j] = w_j * P(sigma_j, sigma_i), diagonal w_i * kappa_i / (2 pi).
// Every row sums to 1 up to quadrature error (K(1) = 1).
struct NPMatrix {
    int n = 0;
    std::vector<double> entries; // row-major

    double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
    double row_sum(int i) const;
    double max_row_sum_defect() const; // max_i |row_sum(i) - 1|
};

NPMatrix np_matrix(const Contour& c);

BoundarySamples np_apply(const NPMatrix& k, const BoundarySamples& phi);

enum class Region { interior, exterior };

// Double-layer transform at an off-boundary point, sum_j w_j phi_j P(s_j, z).
// The requested region must match the winding number.
cplx dl_evaluate(const Contour& c, const BoundarySamples& phi, cplx z, Region region);

// Boundary value: one Nystroem row applied to phi.
cplx dl_evaluate_boundary(const Contour& c, const BoundarySamples& phi, int node);

// C(boundary) -> C(boundary) operator norm of the Nystroem operator
// (max absolute row sum); equals 1 exactly when the domain is convex.
double np_norm(const Contour& c);
double np_norm(const NPMatrix& k);

struct ConvexityReport {
    bool is_convex;
    double min_kernel; // min over node pairs of P(sigma_j, sigma_i), i != j
    double np_norm;
};

// Classifies convexity three ways (kernel sign, operator norm, curvature
// sign) and insists they agree; throws InconsistentClassification when the
// discretization is too coarse to decide.
ConvexityReport convexity_report(const Contour& c);

struct AnalyticImage {
    BoundarySamples kf;                 // K(f) at the nodes
    double antianalytic_residual;       // vs the conjugated singular Cauchy route
    std::optional<double> disk_residual; // |K(f) - f(center)|_inf for circle specs
};

// K restricted to analytic data: K(f) = conj(interior Cauchy transform of
// conj(f)) on the boundary; for disks this collapses to the constant f(center).
AnalyticImage analytic_image(const Contour& c, const BoundarySamples& f);

struct InverseNormReport {
    double inv_norm;     // ||(I + K)^-1||_inf
    double delyon_bound; // (1/2)(3 + (2 pi d^2 / a)^3)
};

InverseNormReport interior_inverse_norm(const Contour& c);

// row-major CSV, 17 significant digits
void write_np_csv(const NPMatrix& k, std::ostream& out);

} // namespace spectral
