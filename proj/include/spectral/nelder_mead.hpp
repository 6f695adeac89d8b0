#pragma once

#include <functional>
#include <vector>

namespace spectral {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
};

struct NelderMeadOptions {
    int max_iterations = 4000;
    double value_tol = 1e-12; // simplex value spread
    double step_tol = 1e-10;  // simplex diameter
};

// Deterministic downhill-simplex MINIMIZER (standard reflection, expansion,
// contraction, shrink). Callers maximizing flip the sign.
NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& fn,
                                      std::vector<double> start, double scale,
                                      const NelderMeadOptions& opts = {});

} // namespace spectral
