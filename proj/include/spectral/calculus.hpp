#pragma once

#include "spectral/contour.hpp"
#include "spectral/linalg.hpp"
#include "spectral/samples.hpp"

namespace spectral {

// Argument-principle count of eigenvalues enclosed by the contour, via the
// trace of the resolvent. Rounds only within 1e-6 of an integer.
int spectrum_inside_count(const CMatrix& a, const Contour& c);

// A matrix together with a contour certified (at construction) to enclose
// its whole spectrum. Resolvents at all nodes are cached. Immutable.
class MatrixOperand {
public:
    MatrixOperand(CMatrix a, Contour c);

    const CMatrix& matrix() const { return a_; }
    const Contour& contour() const { return c_; }
    int dim() const { return a_.dim(); }
    int inside_count() const { return inside_count_; }
    const CMatrix& resolvent(int node) const { return resolvents_[node]; }

private:
    CMatrix a_;
    Contour c_;
    int inside_count_;
    std::vector<CMatrix> resolvents_;
};

// Analytic functional calculus, (1/2 pi i) * integral f(s) (s - A)^-1 ds.
CMatrix gamma_apply(const MatrixOperand& a, const BoundarySamples& f);

// Harmonic functional calculus on f + conj(g): gamma(f) + gamma(g)*.
CMatrix hat_gamma_apply(const MatrixOperand& a, const BoundarySamples& f,
                        const BoundarySamples& g);

// Operator-valued double-layer potential P(sigma_j, A) =
// (1/pi) Re(n_j (sigma_j - A)^-1), Hermitian by construction.
HermitianMatrix op_dl_potential(const MatrixOperand& a, int node);

// Symmetrized calculus, sum_j w_j phi_j P(sigma_j, A). For analytic samples
// the result is cross-checked against gamma(K(f)*)* + gamma(f) and a
// DecompositionMismatch is raised past 1e-7.
CMatrix sym_calculus_apply(const MatrixOperand& a, const BoundarySamples& phi);

// Support function of the numerical range at angle theta: the top eigenvalue
// of Re(e^{-i theta} A).
double nrange_support(const CMatrix& a, double theta);

// Numerical radius via a 720-angle support sweep with one refinement doubling.
double numerical_radius(const CMatrix& a);

struct OperandReport {
    double min_eig_p;      // min over nodes of the smallest eigenvalue of P(s, A)
    double support_slack;  // min over angles of h_domain - h_W(A)
    double sym_norm_at_one;
    bool included;
};

// Tests W(A) within the closed domain two ways (kernel positivity and
// support functions) on a convex contour; the verdicts must agree.
OperandReport nrange_inclusion(const MatrixOperand& a);

} // namespace spectral
