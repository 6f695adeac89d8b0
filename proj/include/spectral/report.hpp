#pragma once

#include "spectral/tolerances.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spectral {

struct CheckRecord {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct Report {
    std::string command;
    std::string scene_path;
    std::uint64_t digest = 0;
    int nodes = 0;
    std::optional<std::uint64_t> seed;
    Tolerances tolerances;
    std::vector<CheckRecord> checks;
    std::vector<std::string> errors; // propagated module errors
    long timing_ms = 0;

    bool pass() const;
    void add(const std::string& name, double value, double tol, bool pass);
    // value must stay within +-tol of target
    void add_near(const std::string& name, double value, double target, double tol);
    // value must be >= floor - tol
    void add_floor(const std::string& name, double value, double floor, double tol);
    // value must be <= cap + tol
    void add_cap(const std::string& name, double value, double cap, double tol);
};

std::string fmt_g17(double v);

// Stable field order; the timing line comes last so report bodies are
// byte-identical for identical scene/seed/nodes.
std::string render_report(const Report& r);

// Writes dir/<command>_report.txt atomically (temp file + rename).
void write_report(const Report& r, const std::string& dir);

} // namespace spectral
