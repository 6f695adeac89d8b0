#include "spectral/scene.hpp"

#include "spectral/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace spectral {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_numbers(const std::string& text, int line) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line) + ": not a number: " + tok);
        }
    }
    return out;
}

std::vector<cplx> parse_complex_list(const std::string& text, int line) {
    const std::vector<double> v = parse_numbers(text, line);
    if (v.size() % 2 != 0)
        throw ParseError("line " + std::to_string(line) +
                         ": complex list needs re/im pairs");
    std::vector<cplx> out(v.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {v[2 * i], v[2 * i + 1]};
    return out;
}

double parse_one(const std::string& text, int line) {
    const auto v = parse_numbers(text, line);
    if (v.size() != 1)
        throw ParseError("line " + std::to_string(line) + ": expected one number");
    return v[0];
}

bool parse_bool(const std::string& text, int line) {
    const std::string t = trim(text);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    throw ParseError("line " + std::to_string(line) + ": expected true/false");
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct MatrixDraft {
    int dim = 0;
    std::vector<std::vector<double>> re, im;
};

struct SceneBuilder {
    Scene scene;
    MatrixDraft matrix;
    std::vector<cplx> fn_coeffs, fn_den;
    bool in_function = false;

    void finish_function(int line) {
        if (!in_function) return;
        if (fn_coeffs.empty())
            throw ValidationError("line " + std::to_string(line) + ": function without coeffs");
        RationalGen g;
        g.num = Poly{fn_coeffs};
        g.den = fn_den.empty() ? Poly{{cplx(1, 0)}} : Poly{fn_den};
        scene.functions.push_back(std::move(g));
        fn_coeffs.clear();
        fn_den.clear();
        in_function = false;
    }
};

} // namespace

Scene parse_scene_text(const std::string& text, const std::string& name) {
    SceneBuilder b;
    b.scene.source_path = name;
    b.scene.digest = fnv1a(text);

    std::istringstream is(text);
    std::string raw;
    std::string block;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (block.empty()) {
            if (s.size() > 1 && s.back() == '{') {
                block = trim(s.substr(0, s.size() - 1));
                const bool known = block == "contour" || block == "matrix" ||
                                   block == "function" || block == "ensemble" ||
                                   block == "extremal" || block == "smoothing" ||
                                   block == "tolerances";
                if (!known)
                    throw ParseError("line " + std::to_string(line) + ": unknown block " + block);
                if (block == "contour") b.scene.contour = ContourSpec{};
                if (block == "ensemble") b.scene.ensemble = Scene::Ensemble{};
                if (block == "extremal") b.scene.extremal = Scene::ExtremalBlock{};
                if (block == "smoothing") b.scene.smoothing = Scene::SmoothingBlock{};
                if (block == "function") b.in_function = true;
                continue;
            }
            throw ParseError("line " + std::to_string(line) + ": expected a block header");
        }

        if (s == "}") {
            if (block == "function") b.finish_function(line);
            block.clear();
            continue;
        }

        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));

        if (block == "contour") {
            ContourSpec& c = *b.scene.contour;
            if (key == "family") {
                if (value == "circle") c.family = CurveFamily::circle;
                else if (value == "ellipse") c.family = CurveFamily::ellipse;
                else if (value == "star") c.family = CurveFamily::star;
                else if (value == "fourier") c.family = CurveFamily::fourier;
                else throw ParseError("line " + std::to_string(line) + ": unknown family");
            } else if (key == "center") {
                const auto v = parse_complex_list(value, line);
                if (v.size() != 1) throw ParseError("line " + std::to_string(line) + ": center");
                c.center = v[0];
            } else if (key == "radius") c.radius = parse_one(value, line);
            else if (key == "a") c.axis_a = parse_one(value, line);
            else if (key == "b") c.axis_b = parse_one(value, line);
            else if (key == "base_radius") c.base_radius = parse_one(value, line);
            else if (key == "amplitude") c.amplitude = parse_one(value, line);
            else if (key == "lobes") c.lobes = static_cast<int>(parse_one(value, line));
            else if (key == "coeffs") c.fourier_coeffs = parse_complex_list(value, line);
            else if (key == "min_mode") c.fourier_min_mode = static_cast<int>(parse_one(value, line));
            else if (key == "nodes") c.nodes = static_cast<int>(parse_one(value, line));
            else throw ParseError("line " + std::to_string(line) + ": unknown contour key " + key);
        } else if (block == "matrix") {
            if (key == "dim") b.matrix.dim = static_cast<int>(parse_one(value, line));
            else if (key == "re") b.matrix.re.push_back(parse_numbers(value, line));
            else if (key == "im") b.matrix.im.push_back(parse_numbers(value, line));
            else throw ParseError("line " + std::to_string(line) + ": unknown matrix key " + key);
        } else if (block == "function") {
            if (key == "coeffs") b.fn_coeffs = parse_complex_list(value, line);
            else if (key == "den") b.fn_den = parse_complex_list(value, line);
            else throw ParseError("line " + std::to_string(line) + ": unknown function key " + key);
        } else if (block == "ensemble") {
            Scene::Ensemble& e = *b.scene.ensemble;
            if (key == "count") e.count = static_cast<int>(parse_one(value, line));
            else if (key == "dim") e.dim = static_cast<int>(parse_one(value, line));
            else if (key == "degree") e.degree = static_cast<int>(parse_one(value, line));
            else if (key == "seed") e.seed = static_cast<std::uint64_t>(parse_one(value, line));
            else if (key == "zero_at_center") e.zero_at_center = parse_bool(value, line);
            else throw ParseError("line " + std::to_string(line) + ": unknown ensemble key " + key);
        } else if (block == "extremal") {
            Scene::ExtremalBlock& e = *b.scene.extremal;
            if (key == "degree") e.degree = static_cast<int>(parse_one(value, line));
            else if (key == "restarts") e.restarts = static_cast<int>(parse_one(value, line));
            else if (key == "seed") e.seed = static_cast<std::uint64_t>(parse_one(value, line));
            else throw ParseError("line " + std::to_string(line) + ": unknown extremal key " + key);
        } else if (block == "smoothing") {
            Scene::SmoothingBlock& sm = *b.scene.smoothing;
            if (key == "points") sm.points.points = parse_complex_list(value, line);
            else if (key == "hull") sm.points.convex_hull_mode = parse_bool(value, line);
            else if (key == "epsilon") sm.params.epsilon = parse_one(value, line);
            else if (key == "levels") sm.params.levels = static_cast<int>(parse_one(value, line));
            else if (key == "grid_h") sm.params.grid_h = parse_one(value, line);
            else if (key == "modes") sm.params.fourier_modes = static_cast<int>(parse_one(value, line));
            else if (key == "nodes") sm.params.contour_nodes = static_cast<int>(parse_one(value, line));
            else if (key == "s_factor") sm.params.s_factor = parse_one(value, line);
            else throw ParseError("line " + std::to_string(line) + ": unknown smoothing key " + key);
        } else if (block == "tolerances") {
            b.scene.tolerances.set(key, parse_one(value, line)); // ValidationError on unknown
        }
    }
    if (!block.empty()) throw ParseError("unterminated block " + block);

    // matrix assembly and invariants
    if (b.matrix.dim > 0 || !b.matrix.re.empty()) {
        const int d = b.matrix.dim > 0 ? b.matrix.dim : static_cast<int>(b.matrix.re.size());
        if (static_cast<int>(b.matrix.re.size()) != d)
            throw ValidationError("matrix: expected " + std::to_string(d) + " re rows");
        if (!b.matrix.im.empty() && static_cast<int>(b.matrix.im.size()) != d)
            throw ValidationError("matrix: im rows must match dim");
        CMatrix m(d);
        for (int i = 0; i < d; ++i) {
            if (static_cast<int>(b.matrix.re[i].size()) != d)
                throw ValidationError("matrix: row " + std::to_string(i) + " is not square");
            if (!b.matrix.im.empty() && static_cast<int>(b.matrix.im[i].size()) != d)
                throw ValidationError("matrix: im row " + std::to_string(i) + " is not square");
            for (int j = 0; j < d; ++j)
                m(i, j) = {b.matrix.re[i][j], b.matrix.im.empty() ? 0.0 : b.matrix.im[i][j]};
        }
        if (!m.all_finite()) throw ValidationError("matrix: entries must be finite");
        b.scene.matrix = std::move(m);
    }
    return b.scene;
}

Scene parse_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scene file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene_text(buf.str(), path);
}

} // namespace spectral
