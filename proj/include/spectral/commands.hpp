#pragma once

#include "spectral/report.hpp"
#include "spectral/scene.hpp"

#include <optional>
#include <string>

namespace spectral {

struct CliOptions {
    std::optional<int> nodes;
    std::optional<std::uint64_t> seed;
    std::string out_dir; // empty: no files written
    bool csv = false;
};

// Dispatch for the batch commands: convexity, transforms, calculus, mapping,
// extremal, smooth, selftest. Module errors are captured into the report and
// make it fail; the caller maps pass/fail onto the exit code.
Report run_command(const std::string& command, const Scene& scene, const CliOptions& opts);

} // namespace spectral
