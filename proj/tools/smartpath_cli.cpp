#include "smartpath/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace smartpath;
    CLI::App app{"smartpath: certified polynomial paths through unions of convex polyhedra"};
    app.require_subcommand(1);

    CliFlags flags;
    std::string mode;
    int nu_cap = 0, samples = 0, seed = 0;
    std::string scene;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--mode", mode, "degree selection")->check(CLI::IsMember({"adaptive", "analytic"}));
        sub->add_option("--nu-cap", nu_cap, "largest Bernstein degree")->check(CLI::PositiveNumber);
        sub->add_option("--samples", samples, "rows in samples.csv")->check(CLI::PositiveNumber);
        sub->add_option("--out", flags.out, "output directory");
        sub->add_option("--seed", seed, "recorded in cert.json");
    };
    CLI::App* plan = app.add_subcommand("plan", "plan and certify a path for a scene");
    plan->add_option("scene", scene, "scene JSON")->required();
    add_common(plan);
    CLI::App* validate = app.add_subcommand("validate", "check a scene and report connectivity");
    validate->add_option("scene", scene, "scene JSON")->required();
    CLI::App* rates = app.add_subcommand("rates", "write Bernstein convergence tables");
    add_common(rates);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitSchema;
    }
    if (!mode.empty()) flags.mode = mode == "analytic" ? DegreeMode::Analytic : DegreeMode::Adaptive;
    if (nu_cap > 0) flags.nu_cap = nu_cap;
    if (samples > 0) flags.samples = samples;
    if (plan->count("--seed") || rates->count("--seed")) flags.seed = seed;

    if (*plan) return cmd_plan(scene, flags, std::cout, std::cerr);
    if (*validate) return cmd_validate(scene, std::cout, std::cerr);
    return cmd_rates(flags, std::cout, std::cerr);
}
