#pragma once

#include "spectral/contour.hpp"
#include "spectral/samples.hpp"
#include "spectral/smoothing.hpp"
#include "spectral/tolerances.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spectral {

// Parsed scene document: key = value lines inside named { } blocks.
struct Scene {
    std::optional<ContourSpec> contour;
    std::optional<CMatrix> matrix;
    std::vector<RationalGen> functions;

    struct Ensemble {
        int count = 100;
        int dim = 3;
        int degree = 5;
        std::optional<std::uint64_t> seed;
        bool zero_at_center = true;
    };
    std::optional<Ensemble> ensemble;

    struct ExtremalBlock {
        int degree = 3;
        int restarts = 8;
        std::optional<std::uint64_t> seed;
    };
    std::optional<ExtremalBlock> extremal;

    struct SmoothingBlock {
        PointSet points;
        SmoothingParams params;
    };
    std::optional<SmoothingBlock> smoothing;

    Tolerances tolerances;
    std::string source_path;
    std::uint64_t digest = 0; // FNV-1a of the document bytes
};

// Throws ParseError (malformed text, unknown keys) or ValidationError
// (violated invariants such as a non-square matrix).
Scene parse_scene(const std::string& path);
Scene parse_scene_text(const std::string& text, const std::string& name = "<memory>");

} // namespace spectral
