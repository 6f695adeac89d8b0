#pragma once

#include "spectral/contour.hpp"
#include "spectral/samples.hpp"

namespace spectral {

// Interior Cauchy transform (1/2pi i) * integral of phi(s)/(s - z) ds at an
// interior point z respecting the standoff rule.
cplx cauchy_interior(const Contour& c, const BoundarySamples& phi, cplx z);

// Exterior counterpart; vanishes at infinity for boundary data of functions
// analytic outside.
cplx cauchy_exterior(const Contour& c, const BoundarySamples& phi, cplx z);

// Principal-value transform at node i. The PV integral of ds/(s - s_i) equals
// pi*i on a smooth contour, which singularity subtraction absorbs into the
// +phi_i/2 term; the j == i summand uses the analytic limit (phi'/sigma')(t_i)
// when a derivative generator is available and is dropped otherwise.
cplx cauchy_singular(const Contour& c, const BoundarySamples& phi, int node);

struct PlemeljResiduals {
    double jump_err;     // max |Phi_int - Phi_ext - phi| over probe nodes
    double interior_err; // max |Phi_int - (Phi + phi/2)|
    double exterior_err; // max |Phi_ext - (Phi - phi/2)|
};

// Verifies the Plemelj-Sokhotski relations: boundary limits of the interior
// and exterior transforms, obtained by off-boundary quadrature on an
// internally refined contour extrapolated along the normal, are compared
// against the singular transform plus/minus half the density. Requires
// generator-based samples.
PlemeljResiduals plemelj_residuals(const Contour& c, const BoundarySamples& phi);

} // namespace spectral
