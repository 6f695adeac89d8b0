#include "spectral/samples.hpp"

#include "spectral/errors.hpp"

#include <algorithm>
#include <cmath>

namespace spectral {

BoundarySamples sample(const Contour& c, const RationalGen& g, bool analytic) {
    const int n = c.size();
    BoundarySamples s;
    s.values.resize(n);
    s.dvalues.resize(n);
    for (int j = 0; j < n; ++j) {
        const cplx z = c.node(j);
        s.values[j] = g.eval(z);
        s.dvalues[j] = g.deriv(z) * c.velocity(j); // d/dt of phi(sigma(t))
    }
    s.analytic = analytic;
    s.gen = std::make_shared<RationalGen>(g);
    return s;
}

BoundarySamples sample(const Contour& c, const Poly& p) {
    return sample(c, RationalGen{p, Poly{{cplx(1, 0)}}}, true);
}

BoundarySamples constant_samples(const Contour& c, cplx v) {
    return sample(c, Poly{{v}});
}

BoundarySamples conjugate(const BoundarySamples& s, bool analytic_result) {
    BoundarySamples r;
    r.values.resize(s.values.size());
    std::transform(s.values.begin(), s.values.end(), r.values.begin(),
                   [](cplx v) { return std::conj(v); });
    r.dvalues.resize(s.dvalues.size());
    std::transform(s.dvalues.begin(), s.dvalues.end(), r.dvalues.begin(),
                   [](cplx v) { return std::conj(v); });
    r.analytic = analytic_result;
    return r;
}

BoundarySamples pointwise_mul(const BoundarySamples& a, const BoundarySamples& b) {
    if (a.values.size() != b.values.size())
        throw Error("pointwise_mul: sample length mismatch");
    BoundarySamples r;
    r.values.resize(a.values.size());
    for (std::size_t j = 0; j < a.values.size(); ++j) r.values[j] = a.values[j] * b.values[j];
    if (a.dvalues.size() == a.values.size() && b.dvalues.size() == b.values.size()) {
        r.dvalues.resize(a.values.size());
        for (std::size_t j = 0; j < a.values.size(); ++j)
            r.dvalues[j] = a.dvalues[j] * b.values[j] + a.values[j] * b.dvalues[j];
    }
    r.analytic = a.analytic && b.analytic;
    return r;
}

BoundarySamples scaled(const BoundarySamples& s, cplx factor) {
    BoundarySamples r = s;
    for (auto& v : r.values) v *= factor;
    for (auto& v : r.dvalues) v *= factor;
    r.gen.reset();
    if (s.gen) {
        RationalGen g = *s.gen;
        for (auto& a : g.num.c) a *= factor;
        r.gen = std::make_shared<RationalGen>(std::move(g));
    }
    return r;
}

double boundary_sup(const BoundarySamples& s) {
    double m = 0.0;
    for (const auto& v : s.values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace spectral
