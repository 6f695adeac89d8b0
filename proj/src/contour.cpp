#include "spectral/contour.hpp"

#include "spectral/errors.hpp"

#include <algorithm>
#include <cmath>

namespace spectral {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

struct Jet {
    cplx sigma, d1, d2; // position and first two parameter derivatives
};

Jet evaluate(const ContourSpec& s, double t) {
    switch (s.family) {
    case CurveFamily::circle: {
        const cplx e = std::polar(1.0, t);
        return {s.center + s.radius * e, cplx(0, 1) * s.radius * e, -s.radius * e};
    }
    case CurveFamily::ellipse: {
        const double ct = std::cos(t), st = std::sin(t);
        return {s.center + cplx(s.axis_a * ct, s.axis_b * st),
                cplx(-s.axis_a * st, s.axis_b * ct),
                cplx(-s.axis_a * ct, -s.axis_b * st)};
    }
    case CurveFamily::star: {
        const double k = s.lobes;
        const double r = s.base_radius * (1.0 + s.amplitude * std::cos(k * t));
        const double r1 = -s.base_radius * s.amplitude * k * std::sin(k * t);
        const double r2 = -s.base_radius * s.amplitude * k * k * std::cos(k * t);
        const cplx e = std::polar(1.0, t);
        // sigma = r e^{it}; sigma' = (r' + i r) e^{it}; sigma'' = (r'' + 2ir' - r) e^{it}
        return {r * e, (cplx(r1, r) ) * e, (cplx(r2 - r, 2.0 * r1)) * e};
    }
    case CurveFamily::fourier: {
        cplx p{0, 0}, d1{0, 0}, d2{0, 0};
        for (std::size_t j = 0; j < s.fourier_coeffs.size(); ++j) {
            const double m = s.fourier_min_mode + static_cast<int>(j);
            const cplx e = std::polar(1.0, m * t);
            const cplx term = s.fourier_coeffs[j] * e;
            p += term;
            d1 += cplx(0, m) * term;
            d2 += -m * m * term;
        }
        return {p, d1, d2};
    }
    }
    throw DegenerateSpec("contour: unknown family");
}

void validate(const ContourSpec& s) {
    if (!power_of_two(s.nodes) || s.nodes < 32)
        throw DegenerateSpec("contour: node count must be a power of two >= 32");
    switch (s.family) {
    case CurveFamily::circle:
        if (!(s.radius > 0.0)) throw DegenerateSpec("circle: radius must be positive");
        break;
    case CurveFamily::ellipse:
        if (!(s.axis_a > 0.0) || !(s.axis_b > 0.0))
            throw DegenerateSpec("ellipse: semi-axes must be positive");
        break;
    case CurveFamily::star:
        if (!(s.base_radius > 0.0)) throw DegenerateSpec("star: base radius must be positive");
        if (!(s.amplitude >= 0.0 && s.amplitude < 1.0))
            throw DegenerateSpec("star: amplitude must lie in [0,1)");
        if (s.lobes < 2) throw DegenerateSpec("star: lobes must be >= 2");
        break;
    case CurveFamily::fourier:
        if (s.fourier_coeffs.empty()) throw DegenerateSpec("fourier: no coefficients");
        break;
    }
}

// segment intersection test for the self-intersection scan
bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
    auto orient = [](cplx p, cplx q, cplx r) {
        const double v = (q.real() - p.real()) * (r.imag() - p.imag()) -
                         (q.imag() - p.imag()) * (r.real() - p.real());
        return (v > 0.0) - (v < 0.0);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4;
}

void check_simple(const ContourSpec& s) {
    const int m = std::min(4 * s.nodes, 2048); // scan cost cap
    std::vector<cplx> p(m);
    for (int j = 0; j < m; ++j) p[j] = evaluate(s, kTwoPi * j / m).sigma;
    for (int i = 0; i < m; ++i) {
        const cplx a = p[i], b = p[(i + 1) % m];
        for (int j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue; // adjacent around the wrap
            if (segments_cross(a, b, p[j], p[(j + 1) % m]))
                throw SelfIntersecting("fourier contour intersects itself");
        }
    }
}

} // namespace

ContourSpec ContourSpec::make_circle(cplx c, double r, int n) {
    ContourSpec s;
    s.family = CurveFamily::circle;
    s.center = c;
    s.radius = r;
    s.nodes = n;
    return s;
}

ContourSpec ContourSpec::make_ellipse(cplx c, double a, double b, int n) {
    ContourSpec s;
    s.family = CurveFamily::ellipse;
    s.center = c;
    s.axis_a = a;
    s.axis_b = b;
    s.nodes = n;
    return s;
}

ContourSpec ContourSpec::make_star(double r, double amp, int k, int n) {
    ContourSpec s;
    s.family = CurveFamily::star;
    s.base_radius = r;
    s.amplitude = amp;
    s.lobes = k;
    s.nodes = n;
    return s;
}

ContourSpec ContourSpec::make_fourier(std::vector<cplx> coeffs, int min_mode, int n) {
    ContourSpec s;
    s.family = CurveFamily::fourier;
    s.fourier_coeffs = std::move(coeffs);
    s.fourier_min_mode = min_mode;
    s.nodes = n;
    return s;
}

Contour make_contour(const ContourSpec& spec) {
    validate(spec);
    if (spec.family == CurveFamily::fourier) check_simple(spec);

    const int n = spec.nodes;
    Contour c;
    c.spec_ = spec;
    c.sigma_.resize(n);
    c.dsigma_.resize(n);
    c.normal_.resize(n);
    c.curvature_.resize(n);
    c.weight_.resize(n);

    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
        const Jet jet = evaluate(spec, kTwoPi * j / n);
        c.sigma_[j] = jet.sigma;
        c.dsigma_[j] = jet.d1;
        scale = std::max(scale, std::abs(jet.sigma));
        const double speed = std::abs(jet.d1);
        if (speed <= 1e-12 * std::max(1.0, scale))
            throw DegenerateSpec("contour: vanishing velocity");
        c.normal_[j] = cplx(0, -1) * jet.d1 / speed;
        c.curvature_[j] = std::imag(jet.d2 * std::conj(jet.d1)) / (speed * speed * speed);
        c.weight_[j] = speed * kTwoPi / n;
    }

    double len = 0.0, area = 0.0;
    cplx mean{0, 0};
    for (int j = 0; j < n; ++j) {
        len += c.weight_[j];
        area += std::imag(std::conj(c.sigma_[j]) * c.dsigma_[j]);
        mean += c.sigma_[j];
    }
    c.length_ = len;
    c.area_ = 0.5 * area * kTwoPi / n;
    c.node_mean_ = mean / static_cast<double>(n);
    if (!(c.area_ > 0.0))
        throw DegenerateSpec("contour: not positively oriented (area <= 0)");

    // strided pair scan; the stride keeps antipodal node pairs so the
    // diameter of the symmetric families stays exact
    const int stride = std::max(1, n / 1024);
    double diam = 0.0;
    for (int i = 0; i < n; i += stride)
        for (int j = i + stride; j < n; j += stride)
            diam = std::max(diam, std::abs(c.sigma_[i] - c.sigma_[j]));
    c.diameter_ = diam;
    c.min_curvature_ = *std::min_element(c.curvature_.begin(), c.curvature_.end());
    return c;
}

Contour refined(const Contour& c, int factor) {
    ContourSpec s = c.spec();
    s.nodes = c.size() * factor;
    return make_contour(s);
}

double Contour::standoff() const { return kTwoPi * diameter_ / size(); }

double Contour::node_distance(cplx z) const {
    double best = std::abs(z - sigma_[0]);
    for (std::size_t j = 1; j < sigma_.size(); ++j)
        best = std::min(best, std::abs(z - sigma_[j]));
    return best;
}

int winding_number(const Contour& c, cplx z) {
    if (c.node_distance(z) < c.standoff())
        throw TooCloseToBoundary("winding_number: point violates the standoff rule");
    const int n = c.size();
    cplx sum{0, 0};
    for (int j = 0; j < n; ++j) sum += c.velocity(j) / (c.node(j) - z);
    const double w = (sum / cplx(0, static_cast<double>(n))).real();
    return static_cast<int>(std::lround(w));
}

double domain_support(const Contour& c, double theta) {
    const cplx u = std::polar(1.0, -theta);
    const int n = c.size();
    int jbest = 0;
    double best = std::real(u * c.node(0));
    for (int j = 1; j < n; ++j) {
        const double v = std::real(u * c.node(j));
        if (v > best) { best = v; jbest = j; }
    }
    // parabolic refinement through the neighbours (uniform parameter spacing)
    const double fm = std::real(u * c.node((jbest + n - 1) % n));
    const double fp = std::real(u * c.node((jbest + 1) % n));
    const double denom = fm - 2.0 * best + fp;
    if (denom < 0.0) {
        const double d = 0.5 * (fm - fp) / denom;
        if (std::abs(d) <= 1.0)
            return best - 0.25 * (fm - fp) * d;
    }
    return best;
}

} // namespace spectral
