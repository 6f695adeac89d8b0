#pragma once

#include <map>
#include <string>

namespace spectral {

// Central tolerance table. Scene files may override entries by name; every
// report echoes the values it used.
struct Tolerances {
    double partition_unity = 1e-8;
    double row_sum = 5e-8;
    double np_norm_convex = 1e-6;
    double kernel_floor = 1e-8;   // one-sided: min kernel >= -kernel_floor
    double disk_collapse = 1e-8;
    double plemelj = 1e-6;
    double total_mass = 1e-8;
    double decomposition = 1e-7;
    double inclusion_eig = 1e-8;  // one-sided eigenvalue slack
    double inclusion_support = 1e-6;
    double sym_norm = 1e-6;
    double radius_bound = 1e-6;   // w(gamma(f)) <= 1 + tol
    double okubo = 1e-6;          // ||gamma(f)|| <= 2 + tol
    double teardrop = 1e-6;
    double ineq_slack = 1e-6;     // triangle-inequality slacks >= -tol
    double inv_norm_disk = 0.01;  // |inv_norm - 1.5| on the unit disk
    double gamma_bound_slack = 1e-6;
    double nilpotent_gamma = 1e-4;
    double nilpotent_rho = 1e-4;
    double rho_np = 1e-6;
    double convexity_floor = 1e-6; // hull-mode curvature >= -tol
    double stability_pct = 0.05;

    void set(const std::string& name, double value); // ValidationError on unknown
    std::map<std::string, double> as_map() const;
};

} // namespace spectral
