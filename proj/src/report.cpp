#include "spectral/report.hpp"

#include "spectral/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace spectral {

void Tolerances::set(const std::string& name, double value) {
    auto table = as_map();
    if (table.find(name) == table.end())
        throw ValidationError("unknown tolerance name: " + name);
    if (name == "partition_unity") partition_unity = value;
    else if (name == "row_sum") row_sum = value;
    else if (name == "np_norm_convex") np_norm_convex = value;
    else if (name == "kernel_floor") kernel_floor = value;
    else if (name == "disk_collapse") disk_collapse = value;
    else if (name == "plemelj") plemelj = value;
    else if (name == "total_mass") total_mass = value;
    else if (name == "decomposition") decomposition = value;
    else if (name == "inclusion_eig") inclusion_eig = value;
    else if (name == "inclusion_support") inclusion_support = value;
    else if (name == "sym_norm") sym_norm = value;
    else if (name == "radius_bound") radius_bound = value;
    else if (name == "okubo") okubo = value;
    else if (name == "teardrop") teardrop = value;
    else if (name == "ineq_slack") ineq_slack = value;
    else if (name == "inv_norm_disk") inv_norm_disk = value;
    else if (name == "gamma_bound_slack") gamma_bound_slack = value;
    else if (name == "nilpotent_gamma") nilpotent_gamma = value;
    else if (name == "nilpotent_rho") nilpotent_rho = value;
    else if (name == "rho_np") rho_np = value;
    else if (name == "convexity_floor") convexity_floor = value;
    else if (name == "stability_pct") stability_pct = value;
}

std::map<std::string, double> Tolerances::as_map() const {
    return {{"partition_unity", partition_unity},
            {"row_sum", row_sum},
            {"np_norm_convex", np_norm_convex},
            {"kernel_floor", kernel_floor},
            {"disk_collapse", disk_collapse},
            {"plemelj", plemelj},
            {"total_mass", total_mass},
            {"decomposition", decomposition},
            {"inclusion_eig", inclusion_eig},
            {"inclusion_support", inclusion_support},
            {"sym_norm", sym_norm},
            {"radius_bound", radius_bound},
            {"okubo", okubo},
            {"teardrop", teardrop},
            {"ineq_slack", ineq_slack},
            {"inv_norm_disk", inv_norm_disk},
            {"gamma_bound_slack", gamma_bound_slack},
            {"nilpotent_gamma", nilpotent_gamma},
            {"nilpotent_rho", nilpotent_rho},
            {"rho_np", rho_np},
            {"convexity_floor", convexity_floor},
            {"stability_pct", stability_pct}};
}

bool Report::pass() const {
    if (!errors.empty()) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void Report::add(const std::string& name, double value, double tol, bool ok) {
    checks.push_back({name, value, tol, ok});
}

void Report::add_near(const std::string& name, double value, double target, double tol) {
    add(name, value, tol, std::abs(value - target) <= tol);
}

void Report::add_floor(const std::string& name, double value, double floor, double tol) {
    add(name, value, tol, value >= floor - tol);
}

void Report::add_cap(const std::string& name, double value, double cap, double tol) {
    add(name, value, tol, value <= cap + tol);
}

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render_report(const Report& r) {
    std::ostringstream os;
    os << "report {\n";
    os << "  command = " << r.command << "\n";
    os << "  scene = " << r.scene_path << "\n";
    char digest[24];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(r.digest));
    os << "  digest = " << digest << "\n";
    os << "  nodes = " << r.nodes << "\n";
    if (r.seed) os << "  seed = " << *r.seed << "\n";
    os << "  tolerances {\n";
    for (const auto& [k, v] : r.tolerances.as_map())
        os << "    " << k << " = " << fmt_g17(v) << "\n";
    os << "  }\n";
    for (const auto& c : r.checks)
        os << "  check { name = " << c.name << "  value = " << fmt_g17(c.value)
           << "  tol = " << fmt_g17(c.tol) << "  pass = " << (c.pass ? "yes" : "no") << " }\n";
    for (const auto& e : r.errors) os << "  error { " << e << " }\n";
    os << "  result = " << (r.pass() ? "pass" : "fail") << "\n";
    os << "}\n";
    os << "timing_ms = " << r.timing_ms << "\n";
    return os.str();
}

void write_report(const Report& r, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path target = fs::path(dir) / (r.command + "_report.txt");
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write report to " + tmp.string());
        out << render_report(r);
    }
    fs::rename(tmp, target);
}

} // namespace spectral
