#include "doctest.h"

#include "spectral/commands.hpp"
#include "spectral/errors.hpp"
#include "spectral/scene.hpp"

#include <regex>
#include <string>

using namespace spectral;

namespace {

const char* kMinimalScene = R"(
# minimal circle + matrix scene
contour {
  family = circle
  center = 0 0
  radius = 1
}
matrix {
  dim = 2
  re = 0 2
  re = 0 0
}
)";

std::string strip_timing(std::string body) {
    return std::regex_replace(body, std::regex("timing_ms = \\d+\n"), "");
}

} // namespace

TEST_SUITE("scene_cli") {

TEST_CASE("minimal scene parses with defaults") {
    Scene s = parse_scene_text(kMinimalScene);
    REQUIRE(s.contour.has_value());
    CHECK(s.contour->nodes == 256);
    CHECK(s.contour->family == CurveFamily::circle);
    REQUIRE(s.matrix.has_value());
    CHECK(s.matrix->dim() == 2);
    CHECK(s.matrix->operator()(0, 1) == cplx(2, 0));
}

TEST_CASE("non-square matrix is rejected") {
    const char* text = R"(
matrix {
  dim = 2
  re = 0 2 1
  re = 0 0 1
}
)";
    CHECK_THROWS_AS(parse_scene_text(text), ValidationError);
}

TEST_CASE("unknown keys and blocks are rejected") {
    CHECK_THROWS_AS(parse_scene_text("garbage {\n}\n"), ParseError);
    CHECK_THROWS_AS(parse_scene_text("contour {\n  wobble = 3\n}\n"), ParseError);
    CHECK_THROWS_AS(parse_scene_text("contour {\n  radius = banana\n}\n"), ParseError);
    CHECK_THROWS_AS(parse_scene_text("contour {\n"), ParseError); // unterminated
}

TEST_CASE("star and ensemble round-trip") {
    const char* text = R"(
contour {
  family = star
  base_radius = 1
  amplitude = 0.3
  lobes = 3
  nodes = 256
}
ensemble {
  count = 7
  dim = 2
  degree = 3
  seed = 5
  zero_at_center = false
}
)";
    Scene s = parse_scene_text(text);
    CHECK(s.contour->family == CurveFamily::star);
    REQUIRE(s.ensemble.has_value());
    CHECK(s.ensemble->count == 7);
    CHECK_FALSE(s.ensemble->zero_at_center);
}

TEST_CASE("rational generators and several function blocks") {
    Scene s = parse_scene_text(R"(
function {
  coeffs = 1 0
  den = 0 0  1 0
}
function {
  coeffs = 0 0  1 0
}
)");
    REQUIRE(s.functions.size() == 2);
    CHECK(s.functions[0].den.degree() == 1);
    // 1/z at z = 2i
    CHECK(std::abs(s.functions[0].eval({0, 2}) - cplx(0, -0.5)) < 1e-15);
    CHECK(s.functions[1].den.degree() == 0);
}

TEST_CASE("tolerance overrides validate names") {
    Scene s = parse_scene_text("tolerances {\n  plemelj = 1e-5\n}\n");
    CHECK(s.tolerances.plemelj == 1e-5);
    CHECK_THROWS_AS(parse_scene_text("tolerances {\n  nope = 1\n}\n"), ValidationError);
}

TEST_CASE("convexity command on the ellipse scene") {
    Scene s = parse_scene_text(R"(
contour {
  family = ellipse
  center = 0 0
  a = 2
  b = 1
  nodes = 256
}
)");
    Report r = run_command("convexity", s, {});
    CHECK(r.pass());
    bool saw_np = false;
    for (const auto& c : r.checks)
        if (c.name == "np_norm") {
            saw_np = true;
            CHECK(std::abs(c.value - 1.0) <= 1e-6);
        }
    CHECK(saw_np);
}

TEST_CASE("calculus command on the nilpotent scene") {
    Scene s = parse_scene_text(kMinimalScene);
    Report r = run_command("calculus", s, {});
    CHECK(r.pass());
    for (const auto& c : r.checks)
        if (c.name == "sym_norm_at_one") CHECK(std::abs(c.value - 2.0) <= 1e-6);
}

TEST_CASE("extremal command reproduces the equality case") {
    Scene s = parse_scene_text(std::string(kMinimalScene) +
                               "extremal {\n  degree = 2\n  restarts = 4\n  seed = 42\n}\n");
    Report r = run_command("extremal", s, {});
    CHECK(r.pass());
    for (const auto& c : r.checks) {
        if (c.name == "gamma_lb") CHECK(std::abs(c.value - 2.0) <= 1e-4);
        if (c.name == "slack_cp") CHECK(c.value == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-3));
    }
}

TEST_CASE("stochastic command requires a seed") {
    Scene s = parse_scene_text(std::string(kMinimalScene) +
                               "ensemble {\n  count = 2\n  dim = 2\n  degree = 3\n}\n");
    Report r = run_command("mapping", s, {});
    CHECK_FALSE(r.pass());
    REQUIRE(!r.errors.empty());
    CHECK(r.errors[0].find("seed") != std::string::npos);

    CliOptions opts;
    opts.seed = 9;
    Report r2 = run_command("mapping", s, opts);
    CHECK(r2.pass());
}

TEST_CASE("module errors are captured, not thrown") {
    // matrix spectrum outside the contour
    Scene s = parse_scene_text(R"(
contour {
  family = circle
  center = 0 0
  radius = 1
}
matrix {
  dim = 1
  re = 3
}
)");
    Report r = run_command("calculus", s, {});
    CHECK_FALSE(r.pass());
    CHECK(!r.errors.empty());
}

TEST_CASE("reports are byte-identical for identical inputs") {
    Scene s = parse_scene_text(kMinimalScene);
    CliOptions opts;
    opts.seed = 4;
    Report a = run_command("calculus", s, opts);
    Report b = run_command("calculus", s, opts);
    CHECK(strip_timing(render_report(a)) == strip_timing(render_report(b)));
}

TEST_CASE("node override changes the discretization") {
    Scene s = parse_scene_text(kMinimalScene);
    CliOptions opts;
    opts.nodes = 64;
    Report r = run_command("convexity", s, opts);
    CHECK(r.nodes == 64);
    CHECK(r.pass());
}

TEST_CASE("render format is stable") {
    Scene s = parse_scene_text(kMinimalScene);
    Report r = run_command("convexity", s, {});
    const std::string body = render_report(r);
    CHECK(body.rfind("report {\n  command = convexity\n  scene = <memory>\n", 0) == 0);
    CHECK(body.find("result = pass") != std::string::npos);
    CHECK(body.find("timing_ms = ") != std::string::npos);
}

} // TEST_SUITE
