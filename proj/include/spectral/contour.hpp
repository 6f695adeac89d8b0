#pragma once

#include "spectral/linalg.hpp"

#include <vector>

namespace spectral {

enum class CurveFamily { circle, ellipse, star, fourier };

// Closed-curve specification. The star family is r(t) = R(1 + a cos(kt))
// about the origin; the fourier family is sigma(t) = sum c_m e^{imt} with
// modes min_mode .. min_mode + coeffs.size() - 1.
struct ContourSpec {
    CurveFamily family = CurveFamily::circle;
    cplx center{0.0, 0.0};
    double radius = 1.0;
    double axis_a = 2.0;
    double axis_b = 1.0;
    double base_radius = 1.0;
    double amplitude = 0.0;
    int lobes = 3;
    std::vector<cplx> fourier_coeffs;
    int fourier_min_mode = 0;
    int nodes = 256; // power of two, >= 32

    static ContourSpec make_circle(cplx c, double r, int n = 256);
    static ContourSpec make_ellipse(cplx c, double a, double b, int n = 256);
    static ContourSpec make_star(double r, double amp, int k, int n = 256);
    static ContourSpec make_fourier(std::vector<cplx> coeffs, int min_mode, int n = 256);
};

// Discretized positively oriented smooth closed curve at t_j = 2*pi*j/N.
// Immutable after construction; safe to share across threads.
class Contour {
public:
    const ContourSpec& spec() const { return spec_; }
    int size() const { return static_cast<int>(sigma_.size()); }

    cplx node(int j) const { return sigma_[j]; }
    cplx velocity(int j) const { return dsigma_[j]; }
    cplx normal(int j) const { return normal_[j]; }
    double curvature(int j) const { return curvature_[j]; }
    double weight(int j) const { return weight_[j]; }

    const std::vector<cplx>& nodes() const { return sigma_; }
    const std::vector<cplx>& velocities() const { return dsigma_; }
    const std::vector<double>& weights() const { return weight_; }

    double length() const { return length_; }
    double area() const { return area_; }
    double diameter() const { return diameter_; }
    double min_curvature() const { return min_curvature_; }

    // minimum allowed distance from the node set for off-boundary quadrature
    double standoff() const;
    double node_distance(cplx z) const;

    bool is_circle() const { return spec_.family == CurveFamily::circle; }
    cplx node_mean() const { return node_mean_; }

    friend Contour make_contour(const ContourSpec& spec);

private:
    ContourSpec spec_;
    std::vector<cplx> sigma_, dsigma_, normal_;
    std::vector<double> curvature_, weight_;
    double length_ = 0.0, area_ = 0.0, diameter_ = 0.0, min_curvature_ = 0.0;
    cplx node_mean_{0.0, 0.0};
};

Contour make_contour(const ContourSpec& spec);

// Same curve rebuilt with factor * N nodes.
Contour refined(const Contour& c, int factor);

// Rounded discrete winding number; 1 inside, 0 outside. Throws
// TooCloseToBoundary below the standoff distance.
int winding_number(const Contour& c, cplx z);

// Support function of the node polygon in direction theta with parabolic
// refinement through the maximizing node and its neighbours.
double domain_support(const Contour& c, double theta);

} // namespace spectral
