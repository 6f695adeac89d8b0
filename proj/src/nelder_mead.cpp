#include "spectral/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace spectral {

NelderMeadResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& fn,
                                      std::vector<double> start, double scale,
                                      const NelderMeadOptions& opts) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += scale;

    std::vector<double> value(n + 1);
    int evals = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        value[i] = fn(simplex[i]);
        ++evals;
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&]() {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    };

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        sort_simplex();
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];

        double spread = value[worst] - value[best];
        double diam = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            diam = std::max(diam, std::abs(simplex[worst][i] - simplex[best][i]));
        if (spread <= opts.value_tol * (1.0 + std::abs(value[best])) && diam <= opts.step_tol)
            break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == worst) continue;
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i];
        }
        for (auto& v : centroid) v /= static_cast<double>(n);

        for (std::size_t i = 0; i < n; ++i) xr[i] = centroid[i] + (centroid[i] - simplex[worst][i]);
        const double fr = fn(xr);
        ++evals;

        if (fr < value[best]) {
            for (std::size_t i = 0; i < n; ++i)
                xe[i] = centroid[i] + 2.0 * (centroid[i] - simplex[worst][i]);
            const double fe = fn(xe);
            ++evals;
            if (fe < fr) {
                simplex[worst] = xe;
                value[worst] = fe;
            } else {
                simplex[worst] = xr;
                value[worst] = fr;
            }
        } else if (fr < value[second]) {
            simplex[worst] = xr;
            value[worst] = fr;
        } else {
            const bool outside = fr < value[worst];
            if (outside)
                for (std::size_t i = 0; i < n; ++i) xc[i] = centroid[i] + 0.5 * (xr[i] - centroid[i]);
            else
                for (std::size_t i = 0; i < n; ++i)
                    xc[i] = centroid[i] + 0.5 * (simplex[worst][i] - centroid[i]);
            const double fc = fn(xc);
            ++evals;
            if (fc < (outside ? fr : value[worst])) {
                simplex[worst] = xc;
                value[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t k = 0; k <= n; ++k) {
                    if (k == best) continue;
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
                    value[k] = fn(simplex[k]);
                    ++evals;
                }
            }
        }
    }

    sort_simplex();
    return {simplex[order[0]], value[order[0]], evals};
}

} // namespace spectral
