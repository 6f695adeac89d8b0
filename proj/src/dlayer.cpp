#include "spectral/dlayer.hpp"

#include "spectral/cauchy.hpp"
#include "spectral/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace spectral {

namespace {
constexpr double kPi = 3.141592653589793238462643;
}

double dl_kernel(const Contour& c, int j, cplx z) {
    const cplx sj = c.node(j);
    if (z == sj) return c.curvature(j) / (2.0 * kPi);
    return std::real(c.normal(j) / (sj - z)) / kPi;
}

double NPMatrix::row_sum(int i) const {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += at(i, j);
    return s;
}

double NPMatrix::max_row_sum_defect() const {
    double d = 0.0;
    for (int i = 0; i < n; ++i) d = std::max(d, std::abs(row_sum(i) - 1.0));
    return d;
}

NPMatrix np_matrix(const Contour& c) {
    const int n = c.size();
    NPMatrix k;
    k.n = n;
    k.entries.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const cplx zi = c.node(i);
        for (int j = 0; j < n; ++j)
            k.entries[static_cast<std::size_t>(i) * n + j] =
                c.weight(j) * (i == j ? c.curvature(j) / (2.0 * kPi) : dl_kernel(c, j, zi));
    }
    return k;
}

BoundarySamples np_apply(const NPMatrix& k, const BoundarySamples& phi) {
    if (phi.size() != k.n) throw Error("np_apply: sample length mismatch");
    BoundarySamples out;
    out.values.resize(k.n);
    for (int i = 0; i < k.n; ++i) {
        cplx s{0, 0};
        for (int j = 0; j < k.n; ++j) s += k.at(i, j) * phi.values[j];
        out.values[i] = s;
    }
    return out;
}

cplx dl_evaluate(const Contour& c, const BoundarySamples& phi, cplx z, Region region) {
    if (phi.size() != c.size()) throw Error("dl_evaluate: sample length mismatch");
    const int w = winding_number(c, z); // enforces the standoff rule
    if (region == Region::interior && w != 1)
        throw RegionMismatch("dl_evaluate: point is not interior");
    if (region == Region::exterior && w != 0)
        throw RegionMismatch("dl_evaluate: point is not exterior");
    cplx s{0, 0};
    for (int j = 0; j < c.size(); ++j) s += c.weight(j) * phi.values[j] * dl_kernel(c, j, z);
    return s;
}

cplx dl_evaluate_boundary(const Contour& c, const BoundarySamples& phi, int node) {
    if (phi.size() != c.size()) throw Error("dl_evaluate: sample length mismatch");
    const cplx zi = c.node(node);
    cplx s{0, 0};
    for (int j = 0; j < c.size(); ++j) {
        const double k = (j == node) ? c.curvature(j) / (2.0 * kPi) : dl_kernel(c, j, zi);
        s += c.weight(j) * phi.values[j] * k;
    }
    return s;
}

double np_norm(const NPMatrix& k) {
    double best = 0.0;
    for (int i = 0; i < k.n; ++i) {
        double row = 0.0;
        for (int j = 0; j < k.n; ++j) row += std::abs(k.at(i, j));
        best = std::max(best, row);
    }
    return best;
}

double np_norm(const Contour& c) { return np_norm(np_matrix(c)); }

ConvexityReport convexity_report(const Contour& c) {
    const int n = c.size();
    double min_kernel = c.curvature(0) / (2.0 * kPi);
    for (int i = 0; i < n; ++i) {
        const cplx zi = c.node(i);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            min_kernel = std::min(min_kernel, dl_kernel(c, j, zi));
        }
    }
    const double norm = np_norm(c);

    const bool by_kernel = min_kernel >= -1e-8;
    const bool by_norm = norm <= 1.0 + 1e-6;
    const bool by_curvature = c.min_curvature() >= -1e-8;
    if (by_kernel != by_norm || by_kernel != by_curvature)
        throw InconsistentClassification(
            "convexity_report: kernel sign, operator norm and curvature disagree");
    return {by_kernel, min_kernel, norm};
}

AnalyticImage analytic_image(const Contour& c, const BoundarySamples& f) {
    if (f.size() != c.size()) throw Error("analytic_image: sample length mismatch");
    const NPMatrix k = np_matrix(c);
    AnalyticImage out;
    out.kf = np_apply(k, f);
    out.kf.analytic = false; // anti-analytic image

    // independent route: K(f) = conj(Phi(conj f) + conj(f)/2)
    const BoundarySamples fbar = conjugate(f);
    double res = 0.0;
    for (int i = 0; i < c.size(); ++i) {
        const cplx via_cauchy =
            std::conj(cauchy_singular(c, fbar, i) + 0.5 * fbar.values[i]);
        res = std::max(res, std::abs(out.kf.values[i] - via_cauchy));
    }
    out.antianalytic_residual = res;

    if (c.is_circle() && f.gen) {
        const cplx fc = f.gen->eval(c.spec().center);
        double d = 0.0;
        for (const auto& v : out.kf.values) d = std::max(d, std::abs(v - fc));
        out.disk_residual = d;
    }
    return out;
}

InverseNormReport interior_inverse_norm(const Contour& c) {
    const NPMatrix k = np_matrix(c);
    const int n = k.n;
    CMatrix a(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = k.at(i, j);
        a(i, i) += 1.0;
    }
    CMatrix inv;
    try {
        inv = lu_inverse(a);
    } catch (const SingularMatrix&) {
        throw SingularOperator("interior_inverse_norm: I + K is singular");
    }
    const double d = c.diameter();
    const double area = c.area();
    const double delyon = 0.5 * (3.0 + std::pow(2.0 * kPi * d * d / area, 3));
    return {inv.inf_norm(), delyon};
}

void write_np_csv(const NPMatrix& k, std::ostream& out) {
    for (int j = 0; j < k.n; ++j) out << (j ? "," : "") << "c" << j;
    out << "\n";
    char buf[32];
    for (int i = 0; i < k.n; ++i) {
        for (int j = 0; j < k.n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", k.at(i, j));
            out << (j ? "," : "") << buf;
        }
        out << "\n";
    }
}

} // namespace spectral
