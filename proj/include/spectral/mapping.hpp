#pragma once

#include "spectral/calculus.hpp"
#include "spectral/samples.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace spectral {

// Samples of p / sup |p| on the contour; resulting sup-norm is 1.
BoundarySamples normalize_unit_ball(const Contour& c, const Poly& p);

struct MappingReport {
    double kernel_residual = 0.0;  // ||K(f)||_inf
    double numerical_radius = 0.0; // w(gamma(f))
    double okubo_norm = 0.0;       // ||gamma(f)||
    std::optional<double> teardrop_slack;
    double crouzeix07_slack = 0.0;
    double rs18_slack = 0.0;
    bool kernel_member = false; // kernel_residual <= 1e-6
};

// Checks the mapping theorem: when K(f) vanishes (disk domains only produce
// exact kernel members), asserts W(gamma(f)) inside the closed unit disk and
// ||gamma(f)|| <= 2; otherwise only reports. Preconditions: convex domain,
// inclusion of W(A), sup-norm one.
MappingReport putinar_sandberg_verify(const MatrixOperand& a, const BoundarySamples& f);

// Teardrop containment on disk domains: W(gamma(f)) inside the convex hull of
// the closed unit disk and the disk around f(center) of radius 1 - |f(center)|^2.
// Returns the minimal support slack over the sweep; asserts slack >= -1e-6.
double drury_teardrop_verify(const MatrixOperand& a, const BoundarySamples& f);

struct CalcInequalities {
    double crouzeix07_slack; // 2 + ||gamma(K(f)*)|| - ||gamma(f)||
    double rs18_slack;       // 2||g||^3 + ||gamma(f K(f)* f)|| ||g|| - ||g||^4
};

CalcInequalities calc_inequalities(const MatrixOperand& a, const BoundarySamples& f);

// One ensemble trial row for the CSV table.
struct TrialRow {
    std::uint64_t seed = 0;
    int dim = 0;
    int degree = 0;
    MappingReport report;
};

struct EnsembleConfig {
    int count = 100;
    int dim = 3;
    int degree = 5;
    std::uint64_t seed = 1;
    bool zero_at_center = true; // impose f(center) = 0
};

// Seeded trial sweep: random certified operands with W(A) inside the domain,
// random normalized polynomials; on circle specs the teardrop check runs too.
std::vector<TrialRow> run_mapping_ensemble(const Contour& c, const EnsembleConfig& cfg);

void write_ensemble_csv(const std::vector<TrialRow>& rows, std::ostream& out);

// Random operand generation shared with the extremal searches and the
// acceptance suite: triangular draw scaled so that W(A) fits the domain with
// the given relative margin.
CMatrix random_included_matrix(const Contour& c, int dim, double fill, std::uint64_t seed);

} // namespace spectral
