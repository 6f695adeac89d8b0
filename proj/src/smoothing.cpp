#include "spectral/smoothing.hpp"

#include "spectral/calculus.hpp"
#include "spectral/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace spectral {

namespace {

constexpr double kPi = 3.141592653589793238462643;
constexpr double kTwoPi = 2.0 * kPi;

double segment_distance(cplx a, cplx b, cplx z) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

double cross(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

// Andrew monotone chain, counterclockwise
std::vector<cplx> convex_hull(std::vector<cplx> pts) {
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<cplx> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool inside_convex(const std::vector<cplx>& hull, cplx z) {
    if (hull.size() < 3) return false;
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (cross(hull[i], hull[(i + 1) % hull.size()], z) < 0.0) return false;
    return true;
}

bool point_in_node_polygon(const Contour& c, cplx z) {
    const int n = c.size();
    bool inside = false;
    for (int i = 0, j = n - 1; i < n; j = i++) {
        const cplx a = c.node(i), b = c.node(j);
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            const double xc =
                (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
            if (z.real() < xc) inside = !inside;
        }
    }
    return inside;
}

// --- marching squares ------------------------------------------------------

// edge ids: ((iy * (nx + 1) + ix) << 1) | orientation, 0 horizontal, 1 vertical
std::uint64_t edge_id(int ix, int iy, int vertical, int nx) {
    return (static_cast<std::uint64_t>(iy) * (nx + 1) + ix) * 2 + vertical;
}

struct LevelSet {
    std::vector<cplx> points; // closed polyline, implicitly wrapping
};

bool point_in_polyline(const std::vector<cplx>& poly, cplx z) {
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const cplx a = poly[i], b = poly[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            const double xc =
                (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
            if (z.real() < xc) inside = !inside;
        }
    }
    return inside;
}

std::vector<LevelSet> extract_level_loops(const ScalarField& f, double iso) {
    const int nx = f.nx, ny = f.ny;
    std::map<std::uint64_t, cplx> crossing;
    std::multimap<std::uint64_t, std::uint64_t> link;

    auto edge_point = [&](int ix, int iy, int vertical) {
        const std::uint64_t id = edge_id(ix, iy, vertical, nx);
        auto it = crossing.find(id);
        if (it != crossing.end()) return id;
        const double fa = f.at(ix, iy) - iso;
        const double fb = (vertical ? f.at(ix, iy + 1) : f.at(ix + 1, iy)) - iso;
        const double tau = fa / (fa - fb);
        const cplx pa = f.pos(ix, iy);
        const cplx pb = vertical ? f.pos(ix, iy + 1) : f.pos(ix + 1, iy);
        crossing.emplace(id, pa + tau * (pb - pa));
        return id;
    };

    for (int iy = 0; iy + 1 < ny; ++iy) {
        for (int ix = 0; ix + 1 < nx; ++ix) {
            const bool b0 = f.at(ix, iy) < iso;
            const bool b1 = f.at(ix + 1, iy) < iso;
            const bool b2 = f.at(ix + 1, iy + 1) < iso;
            const bool b3 = f.at(ix, iy + 1) < iso;
            const int code = b0 | (b1 << 1) | (b2 << 2) | (b3 << 3);
            if (code == 0 || code == 15) continue;

            const std::uint64_t bottom = edge_id(ix, iy, 0, nx);
            const std::uint64_t top = edge_id(ix, iy + 1, 0, nx);
            const std::uint64_t left = edge_id(ix, iy, 1, nx);
            const std::uint64_t right = edge_id(ix + 1, iy, 1, nx);

            auto add = [&](std::uint64_t a, std::uint64_t b, int vax, int vay, int vbx, int vby,
                           int aor, int bor) {
                edge_point(vax, vay, aor);
                edge_point(vbx, vby, bor);
                link.emplace(a, b);
                link.emplace(b, a);
            };
            auto seg = [&](char ea, char eb) {
                const std::uint64_t ids[4] = {bottom, right, top, left};
                auto pick = [&](char e, int& x, int& y, int& orient) {
                    switch (e) {
                    case 'b': x = ix; y = iy; orient = 0; return ids[0];
                    case 'r': x = ix + 1; y = iy; orient = 1; return ids[1];
                    case 't': x = ix; y = iy + 1; orient = 0; return ids[2];
                    default: x = ix; y = iy; orient = 1; return ids[3];
                    }
                };
                int ax, ay, ao, bx, by, bo;
                const std::uint64_t ia = pick(ea, ax, ay, ao);
                const std::uint64_t ib = pick(eb, bx, by, bo);
                add(ia, ib, ax, ay, bx, by, ao, bo);
            };

            switch (code) {
            case 1: case 14: seg('l', 'b'); break;
            case 2: case 13: seg('b', 'r'); break;
            case 3: case 12: seg('l', 'r'); break;
            case 4: case 11: seg('r', 't'); break;
            case 6: case 9: seg('b', 't'); break;
            case 7: case 8: seg('l', 't'); break;
            case 5: case 10: {
                // saddle: split by the centre value
                const double centre = 0.25 * (f.at(ix, iy) + f.at(ix + 1, iy) +
                                              f.at(ix + 1, iy + 1) + f.at(ix, iy + 1));
                const bool centre_in = centre < iso;
                if ((code == 5) == centre_in) {
                    seg('l', 't');
                    seg('b', 'r');
                } else {
                    seg('l', 'b');
                    seg('r', 't');
                }
                break;
            }
            default: break;
            }
        }
    }

    if (crossing.empty()) throw GridTooCoarse("level set: no crossings at this level");

    // every edge must pair exactly two segments, otherwise the set leaks
    for (const auto& [id, p] : crossing) {
        (void)p;
        if (link.count(id) != 2)
            throw GridTooCoarse("level set: open chain at the grid border");
    }

    std::vector<LevelSet> loops;
    std::map<std::uint64_t, bool> used;
    for (const auto& [id, p] : crossing) {
        (void)p;
        used[id] = false;
    }
    for (const auto& [start, sp] : crossing) {
        (void)sp;
        if (used[start]) continue;
        LevelSet loop;
        std::uint64_t prev = start;
        std::uint64_t current = link.equal_range(start).first->second;
        loop.points.push_back(crossing.at(start));
        used[start] = true;
        std::size_t guard = 0;
        while (current != start) {
            if (++guard > crossing.size() + 1)
                throw GridTooCoarse("level set: chain walk failed");
            loop.points.push_back(crossing.at(current));
            used[current] = true;
            auto r = link.equal_range(current);
            std::uint64_t next = r.first->second;
            if (next == prev) next = std::next(r.first)->second;
            prev = current;
            current = next;
        }
        // orient counterclockwise
        double area2 = 0.0;
        for (std::size_t i = 0; i < loop.points.size(); ++i) {
            const cplx a = loop.points[i];
            const cplx b = loop.points[(i + 1) % loop.points.size()];
            area2 += a.real() * b.imag() - b.real() * a.imag();
        }
        if (area2 < 0.0) std::reverse(loop.points.begin(), loop.points.end());
        loops.push_back(std::move(loop));
    }
    return loops;
}

// The delivered curve is the outer boundary. Extra loops must be holes
// (strictly inside the outer one); separate blobs mean the target set is too
// spread out for a single smooth domain at this level.
LevelSet outer_level_set(const ScalarField& f, double iso) {
    std::vector<LevelSet> loops = extract_level_loops(f, iso);
    std::size_t best = 0;
    double best_area = -1.0;
    for (std::size_t i = 0; i < loops.size(); ++i) {
        double area2 = 0.0;
        for (std::size_t k = 0; k < loops[i].points.size(); ++k) {
            const cplx a = loops[i].points[k];
            const cplx b = loops[i].points[(k + 1) % loops[i].points.size()];
            area2 += a.real() * b.imag() - b.real() * a.imag();
        }
        if (std::abs(area2) > best_area) {
            best_area = std::abs(area2);
            best = i;
        }
    }
    for (std::size_t i = 0; i < loops.size(); ++i) {
        if (i == best) continue;
        if (!point_in_polyline(loops[best].points, loops[i].points.front()))
            throw GridTooCoarse("level set: disconnected domain");
    }
    return std::move(loops[best]);
}

// Discrete regular-value proxy: over every cell crossed by the level, the
// largest value jump along its crossed edges, divided by the spacing; a
// central difference would underestimate the slope next to the kink of the
// offset distance when the mollifier is narrower than the grid.
double band_transversality(const ScalarField& f, double iso) {
    double worst = 1e300;
    bool any = false;
    for (int iy = 0; iy + 1 < f.ny; ++iy)
        for (int ix = 0; ix + 1 < f.nx; ++ix) {
            const double v[4] = {f.at(ix, iy), f.at(ix + 1, iy), f.at(ix + 1, iy + 1),
                                 f.at(ix, iy + 1)};
            const bool b[4] = {v[0] < iso, v[1] < iso, v[2] < iso, v[3] < iso};
            if (b[0] == b[1] && b[1] == b[2] && b[2] == b[3]) continue;
            double cell = 0.0;
            const int e[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
            for (const auto& pair : e)
                if (b[pair[0]] != b[pair[1]])
                    cell = std::max(cell, std::abs(v[pair[0]] - v[pair[1]]));
            worst = std::min(worst, cell / f.h);
            any = true;
        }
    return any ? worst : 0.0;
}

// --- curve fitting ---------------------------------------------------------

struct FittedCurve {
    ContourSpec spec;
    double residual;
};

FittedCurve fit_fourier_least_squares(const LevelSet& ls, int modes, int nodes) {
    const std::size_t m = ls.points.size();
    // arclength parameter
    std::vector<double> t(m);
    double len = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        t[i] = len;
        len += std::abs(ls.points[(i + 1) % m] - ls.points[i]);
    }
    for (auto& v : t) v *= kTwoPi / len;

    const int dim = 2 * modes + 1;
    CMatrix g(dim);
    CVector b(dim, cplx(0, 0));
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<cplx> e(dim);
        for (int k = -modes; k <= modes; ++k) e[k + modes] = std::polar(1.0, k * t[i]);
        for (int r = 0; r < dim; ++r) {
            b[r] += std::conj(e[r]) * ls.points[i];
            for (int cidx = 0; cidx < dim; ++cidx) g(r, cidx) += std::conj(e[r]) * e[cidx];
        }
    }
    CVector coeff = lu_solve(g, b);

    double residual = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        cplx v{0, 0};
        for (int k = -modes; k <= modes; ++k) v += coeff[k + modes] * std::polar(1.0, k * t[i]);
        residual = std::max(residual, std::abs(v - ls.points[i]));
    }
    return {ContourSpec::make_fourier(std::move(coeff), -modes, nodes), residual};
}

// Convexity-preserving fit: the polyline's convex hull has curvature measure
// sum of edge-length atoms at the edge-normal angles; convolving that measure
// with a positive (Jackson) kernel keeps it positive, so the fitted curve is
// genuinely convex. Coefficients of the support function follow from the
// smoothed measure, the curve is sigma = (h + i h') e^{i theta}.
FittedCurve fit_support_jackson(const LevelSet& ls, int modes, int nodes) {
    const std::vector<cplx> hull = convex_hull(ls.points);
    if (hull.size() < 3) throw GridTooCoarse("support fit: degenerate hull");
    const std::size_t m = hull.size();

    std::vector<double> length(m), angle(m);
    for (std::size_t i = 0; i < m; ++i) {
        const cplx e = hull[(i + 1) % m] - hull[i];
        length[i] = std::abs(e);
        angle[i] = std::arg(e) - 0.5 * kPi; // outward normal of a CCW edge
    }

    // Jackson multipliers (Fourier coefficients of the kernel); the kernel is
    // a trig polynomial of degree <= modes, so a long DFT is exact
    const int half = modes / 2 + 1;
    const int q = 8192;
    std::vector<double> kernel(q);
    double mass = 0.0;
    for (int i = 0; i < q; ++i) {
        const double x = kTwoPi * i / q;
        const double s = std::sin(0.5 * x);
        const double num = std::sin(0.5 * half * x);
        kernel[i] = (std::abs(s) < 1e-14) ? std::pow(static_cast<double>(half), 4)
                                          : std::pow(num / s, 4);
        mass += kernel[i];
    }
    std::vector<double> mult(modes + 1, 0.0);
    for (int k = 0; k <= modes; ++k) {
        double re = 0.0;
        for (int i = 0; i < q; ++i) re += kernel[i] * std::cos(k * kTwoPi * i / q);
        mult[k] = re / mass;
    }

    // support-function coefficients b_k from the smoothed curvature measure
    std::vector<cplx> bcoef(2 * modes + 1, cplx(0, 0));
    for (int k = -modes; k <= modes; ++k) {
        if (k == 1 || k == -1) continue;
        cplx rho{0, 0};
        for (std::size_t i = 0; i < m; ++i) rho += length[i] * std::polar(1.0, -k * angle[i]);
        bcoef[k + modes] = mult[std::abs(k)] * rho / (kTwoPi * (1.0 - double(k) * k));
    }
    // k = +-1 carries only the translation; take it from the raw support
    cplx b1{0, 0};
    const int qs = 2048;
    for (int i = 0; i < qs; ++i) {
        const double theta = kTwoPi * i / qs;
        double h = -1e300;
        for (const auto& v : hull) h = std::max(h, std::real(std::polar(1.0, -theta) * v));
        b1 += h * std::polar(1.0, -theta) / static_cast<double>(qs);
    }
    bcoef[1 + modes] = b1;
    bcoef[-1 + modes] = std::conj(b1);

    // sigma(theta) = sum_k b_k (1 - k) e^{i (k+1) theta}
    std::vector<cplx> curve(2 * modes + 1, cplx(0, 0));
    for (int k = -modes; k <= modes; ++k) curve[k + modes] = bcoef[k + modes] * (1.0 - double(k));
    // modes k+1 run from -modes+1 .. modes+1
    ContourSpec spec = ContourSpec::make_fourier(std::move(curve), -modes + 1, nodes);

    // residual: worst support mismatch against the raw hull
    double residual = 0.0;
    for (int i = 0; i < qs; ++i) {
        const double theta = kTwoPi * i / qs;
        double h_raw = -1e300;
        for (const auto& v : hull) h_raw = std::max(h_raw, std::real(std::polar(1.0, -theta) * v));
        cplx hs{0, 0};
        for (int k = -modes; k <= modes; ++k)
            hs += bcoef[k + modes] * std::polar(1.0, k * theta);
        residual = std::max(residual, std::abs(hs.real() - h_raw));
    }
    return {std::move(spec), residual};
}

} // namespace

double SmoothingParams::admissible_width(int level) const {
    return epsilon / (2.0 * level * (level + 1));
}

double SmoothingParams::mollifier_radius(int level) const {
    // nominal radius s_factor * width, but never below two grid cells when
    // the admissible interval allows it: a sub-grid mollifier degenerates to
    // the identity and leaves the distance-field ridges unsmoothed
    const double width = admissible_width(level);
    return std::min(0.9 * width, std::max(s_factor * width, 2.0 * grid_h));
}

double set_distance(const PointSet& x, cplx z) {
    if (x.points.empty()) throw ValidationError("point set: empty");
    if (x.convex_hull_mode) {
        const std::vector<cplx> hull = convex_hull(x.points);
        if (hull.size() >= 3) {
            if (inside_convex(hull, z)) return 0.0;
            double best = 1e300;
            for (std::size_t i = 0; i < hull.size(); ++i)
                best = std::min(best, segment_distance(hull[i], hull[(i + 1) % hull.size()], z));
            return best;
        }
        if (hull.size() == 2) return segment_distance(hull[0], hull[1], z);
        return std::abs(z - hull[0]);
    }
    double best = 1e300;
    for (const auto& p : x.points) best = std::min(best, std::abs(z - p));
    return best;
}

ScalarField distance_field(const PointSet& x, const SmoothingParams& p) {
    if (x.points.empty()) throw ValidationError("point set: empty");
    if (!(p.epsilon > 0.0)) throw ValidationError("smoothing: epsilon must be positive");
    if (!(p.grid_h > 0.0)) throw ValidationError("smoothing: grid spacing must be positive");
    if (p.grid_h > p.s_factor * p.admissible_width(1) / 4.0 + 1e-15)
        throw ValidationError("smoothing: grid spacing must be at most s_1 / 4");
    if (p.levels < 1) throw ValidationError("smoothing: at least one level");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& pt : x.points) {
        xmin = std::min(xmin, pt.real());
        xmax = std::max(xmax, pt.real());
        ymin = std::min(ymin, pt.imag());
        ymax = std::max(ymax, pt.imag());
    }
    const double pad = 2.0 * p.epsilon;
    ScalarField f;
    f.h = p.grid_h;
    f.x0 = xmin - pad;
    f.y0 = ymin - pad;
    f.nx = static_cast<int>(std::ceil((xmax - xmin + 2 * pad) / p.grid_h)) + 1;
    f.ny = static_cast<int>(std::ceil((ymax - ymin + 2 * pad) / p.grid_h)) + 1;
    f.v.resize(static_cast<std::size_t>(f.nx) * f.ny);
    for (int iy = 0; iy < f.ny; ++iy)
        for (int ix = 0; ix < f.nx; ++ix) f.at(ix, iy) = set_distance(x, f.pos(ix, iy));
    return f;
}

std::vector<SmoothLevel> build_domains(const PointSet& x, const SmoothingParams& p) {
    const ScalarField base = distance_field(x, p);

    std::vector<SmoothLevel> out;
    for (int level = 1; level <= p.levels; ++level) {
        const double offset = p.epsilon / (level + 1);
        const double s = p.mollifier_radius(level);
        const double width = p.admissible_width(level);

        // dist(N_{level+1}, z) in closed form for metric-ball neighbourhoods
        ScalarField field = base;
        for (auto& v : field.v) v = std::max(v - offset, 0.0);

        // mollify with the standard bump scaled to radius s, unit mass on grid
        const int r = static_cast<int>(std::floor(s / p.grid_h));
        if (r >= 1) {
            std::vector<double> w;
            std::vector<std::pair<int, int>> off;
            double mass = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double rr =
                        (dx * (double)dx + dy * (double)dy) * p.grid_h * p.grid_h / (s * s);
                    if (rr >= 1.0) continue;
                    const double wv = std::exp(-1.0 / (1.0 - rr));
                    w.push_back(wv);
                    off.emplace_back(dx, dy);
                    mass += wv;
                }
            for (auto& wv : w) wv /= mass;
            ScalarField sm = field;
            for (int iy = 0; iy < field.ny; ++iy)
                for (int ix = 0; ix < field.nx; ++ix) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < w.size(); ++k) {
                        const int jx = std::clamp(ix + off[k].first, 0, field.nx - 1);
                        const int jy = std::clamp(iy + off[k].second, 0, field.ny - 1);
                        acc += w[k] * field.at(jx, jy);
                    }
                    sm.at(ix, iy) = acc;
                }
            field = std::move(sm);
        }

        // level value: midpoint of the admissible interval, nudged by up to
        // 10% until the gradient on the extracted band clears the floor
        const double mid = 0.5 * (s + width);
        const double play = width - s;
        bool accepted = false;
        double t_used = mid;
        for (int step : {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5}) {
            const double t = mid + 0.02 * step * play;
            const double eta = t / (4.0 * s);
            if (band_transversality(field, t) > eta) {
                accepted = true;
                t_used = t;
                break;
            }
        }
        if (!accepted)
            throw LevelNotRegular("build_domains: no admissible level value found");
        const LevelSet ls = outer_level_set(field, t_used);

        FittedCurve fit;
        if (x.convex_hull_mode) {
            // the kernel degree trades kink bias against node crowding on the
            // flat stretches; 128 keeps both inside the nesting budgets
            fit = fit_support_jackson(ls, std::max(p.fourier_modes, 128), p.contour_nodes);
        } else {
            // grow the mode count until the fit resolves the target's
            // features (a 2^k-point sample set produces that many scallops)
            int modes = p.fourier_modes;
            const int cap = std::min<int>(192, static_cast<int>(ls.points.size()) / 3);
            fit = fit_fourier_least_squares(ls, modes, p.contour_nodes);
            while (fit.residual > p.grid_h && 2 * modes <= cap) {
                modes *= 2;
                fit = fit_fourier_least_squares(ls, modes, p.contour_nodes);
            }
        }
        out.push_back({make_contour(fit.spec), s, t_used, offset, fit.residual, ls.points});
    }
    return out;
}

NestingReport nesting_report(const std::vector<SmoothLevel>& domains, const PointSet& x,
                             const SmoothingParams& p) {
    if (domains.size() < 2)
        throw ValidationError("nesting_report: needs at least two levels");

    NestingReport rep;
    bool all_ok = true;
    for (std::size_t n = 0; n < domains.size(); ++n) {
        const Contour& c = domains[n].contour;
        NestingLevelReport row;
        row.level = static_cast<int>(n) + 1;
        row.min_curvature = c.min_curvature();

        // support-parametrized (hull-mode) curves crowd their nodes at the
        // corners; refine before quadrature so the winding test stays sharp
        const Contour fine = c.size() >= 2048 ? c : refined(c, 2048 / c.size());
        row.x_inside = true;
        for (const auto& pt : x.points) {
            bool in;
            try {
                in = winding_number(fine, pt) == 1;
            } catch (const TooCloseToBoundary&) {
                in = false;
            }
            if (!in) { row.x_inside = false; break; }
        }
        // in hull mode the contour is convex, so vertices inside imply the
        // whole hull is inside

        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (int j = 0; j < c.size(); ++j) {
            xmin = std::min(xmin, c.node(j).real());
            xmax = std::max(xmax, c.node(j).real());
            ymin = std::min(ymin, c.node(j).imag());
            ymax = std::max(ymax, c.node(j).imag());
        }

        if (n > 0) {
            const Contour& prev = domains[n - 1].contour;
            for (int j = 0; j < c.size(); ++j)
                if (!point_in_node_polygon(prev, c.node(j))) {
                    row.nested_in_previous = false;
                    break;
                }
            // grid sample of the enclosed region against the previous level
            const double step = 4.0 * p.grid_h;
            for (double yy = ymin; row.nested_in_previous && yy <= ymax; yy += step)
                for (double xx = xmin; xx <= xmax; xx += step) {
                    const cplx z{xx, yy};
                    if (point_in_node_polygon(c, z) && !point_in_node_polygon(prev, z)) {
                        row.nested_in_previous = false;
                        break;
                    }
                }
        }

        // Hausdorff distance to the target set: the domain may carry holes
        // that the single outer curve does not show, so membership in the
        // sublevel set is decided by the offset distance itself
        const double offset = p.epsilon / (row.level + 1);
        double haus = 0.0;
        for (int j = 0; j < c.size(); ++j) haus = std::max(haus, set_distance(x, c.node(j)));
        const double step = 2.0 * p.grid_h;
        for (double yy = ymin; yy <= ymax; yy += step)
            for (double xx = xmin; xx <= xmax; xx += step) {
                const cplx z{xx, yy};
                const double d = set_distance(x, z);
                if (std::max(d - offset, 0.0) < domains[n].t) haus = std::max(haus, d);
            }
        row.hausdorff = haus;
        row.hausdorff_bound = p.epsilon / row.level + 2.0 * p.grid_h;

        bool ok = row.x_inside && row.nested_in_previous && row.hausdorff <= row.hausdorff_bound;
        if (x.convex_hull_mode) ok = ok && row.min_curvature >= -1e-6;
        all_ok = all_ok && ok;
        rep.levels.push_back(row);
    }
    rep.ok = all_ok;
    if (!all_ok) {
        std::string msg = "nesting_report: violations at levels";
        for (const auto& row : rep.levels) {
            const bool ok = row.x_inside && row.nested_in_previous &&
                            row.hausdorff <= row.hausdorff_bound &&
                            (!x.convex_hull_mode || row.min_curvature >= -1e-6);
            if (!ok) msg += " " + std::to_string(row.level);
        }
        throw NestingViolated(msg);
    }
    return rep;
}

StabilityTable spectral_stability(const CMatrix& a, const Poly& f,
                                  const std::vector<SmoothLevel>& domains, const PointSet& x) {
    if (domains.empty()) throw ValidationError("spectral_stability: no domains");

    // f(A) by direct polynomial arithmetic (Horner)
    const int d = a.dim();
    CMatrix fa(d);
    for (int i = 0; i < d; ++i) fa(i, i) = f.c.back();
    for (std::size_t k = f.c.size() - 1; k-- > 0;) {
        fa = fa * a;
        for (int i = 0; i < d; ++i) fa(i, i) += f.c[k];
    }
    StabilityTable table;
    table.norm_fa = fa.max_abs() == 0.0 ? 0.0 : operator_norm(fa);

    for (std::size_t n = 0; n < domains.size(); ++n) {
        // refine for quadrature: hull-mode curves have non-uniform node speed
        const Contour c = domains[n].contour.size() >= 4096
                              ? domains[n].contour
                              : refined(domains[n].contour, 4096 / domains[n].contour.size());
        MatrixOperand op(a, c); // certifies the spectrum lies inside
        const BoundarySamples fs = sample(c, f);
        const CMatrix g = gamma_apply(op, fs);

        StabilityRow row;
        row.level = static_cast<int>(n) + 1;
        row.sup_f = boundary_sup(fs);
        row.raw_sup = 0.0;
        for (const auto& pt : domains[n].level_points)
            row.raw_sup = std::max(row.raw_sup, std::abs(f.eval(pt)));
        row.gamma_residual = (g - fa).frobenius_norm();
        row.ratio = row.sup_f > 0.0 ? table.norm_fa / row.sup_f : 0.0;
        if (row.gamma_residual > 1e-6)
            throw HypothesisViolated("spectral_stability: gamma disagrees with direct arithmetic");
        if (n > 0 && row.sup_f > table.rows.back().sup_f + 1e-9)
            throw HypothesisViolated("spectral_stability: sup sequence not non-increasing");
        table.rows.push_back(row);
    }

    // sup of |f| over the target set boundary
    double xsup = 0.0;
    if (x.convex_hull_mode) {
        const std::vector<cplx> hull = convex_hull(x.points);
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const cplx va = hull[i], vb = hull[(i + 1) % hull.size()];
            for (int k = 0; k <= 256; ++k)
                xsup = std::max(xsup, std::abs(f.eval(va + (vb - va) * (k / 256.0))));
        }
    } else {
        for (const auto& pt : x.points) xsup = std::max(xsup, std::abs(f.eval(pt)));
    }
    table.x_boundary_sup = xsup;

    // Each level boundary sits at base distance u_n = offset_n + t_n from the
    // target set, so sup_n is a smooth function of u_n; extrapolating the last
    // three (u, sup) pairs to u = 0 reaches the target sup. The raw last level
    // cannot: its boundary stays eps/(n+1) away by construction. The raw
    // level-set sups feed the extrapolation because the curve fit smooths
    // fine target features unevenly across levels.
    const auto& rows = table.rows;
    const std::size_t m = rows.size();
    double extrap = rows.back().raw_sup;
    if (m >= 2) {
        const std::size_t k0 = m >= 3 ? m - 3 : m - 2;
        std::vector<double> u, y;
        for (std::size_t k = k0; k < m; ++k) {
            u.push_back(domains[k].offset + domains[k].t);
            y.push_back(rows[k].raw_sup);
        }
        for (std::size_t step = 1; step < u.size(); ++step)
            for (std::size_t i = 0; i + step < u.size(); ++i)
                y[i] = (u[i + step] * y[i] - u[i] * y[i + 1]) / (u[i + step] - u[i]);
        extrap = y[0];
    }
    table.extrapolated_sup = extrap;
    table.extrapolated_ratio = extrap > 0.0 ? table.norm_fa / extrap : 0.0;

    if (m >= 3) {
        const double decrease = rows.front().sup_f - rows.back().sup_f;
        if (std::abs(extrap - xsup) > 0.05 * decrease + 1e-9)
            throw HypothesisViolated("spectral_stability: sups do not converge to the target sup");
    }
    return table;
}

} // namespace spectral
