#include "CLI11.hpp"

#include "spectral/commands.hpp"
#include "spectral/errors.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"spectral-contour: boundary-integral checks for functional-calculus bounds"};
    app.require_subcommand(1);

    std::string scene_path;
    spectral::CliOptions opts;
    int nodes = 0;
    std::uint64_t seed = 0;
    bool have_nodes = false, have_seed = false;

    auto add_common = [&](CLI::App* sub, bool scene_required) {
        auto* s = sub->add_option("--scene", scene_path, "scene file");
        if (scene_required) s->required();
        sub->add_option("--nodes", nodes, "override contour node count")
            ->each([&](const std::string&) { have_nodes = true; });
        sub->add_option("--seed", seed, "override master seed")
            ->each([&](const std::string&) { have_seed = true; });
        sub->add_option("--out", opts.out_dir, "directory for reports and artifacts");
        sub->add_flag("--csv", opts.csv, "write CSV artifacts (requires --out)");
    };

    for (const char* name : {"convexity", "transforms", "calculus", "mapping", "extremal",
                             "smooth"})
        add_common(app.add_subcommand(name), true);
    add_common(app.add_subcommand("selftest", "run the full verification suite"), false);

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    if (have_nodes) opts.nodes = nodes;
    if (have_seed) opts.seed = seed;

    try {
        spectral::Scene scene;
        if (!scene_path.empty()) scene = spectral::parse_scene(scene_path);
        const spectral::Report rep = spectral::run_command(command, scene, opts);
        std::cout << spectral::render_report(rep);
        return rep.pass() ? 0 : 1;
    } catch (const spectral::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
