// Command-line front end: runs scenarios end to end and writes the
// plot-ready CSV tables.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thiele/scenario.hpp"

namespace {

int run_spec(thiele::ScenarioSpec spec, const std::string& out_dir, double step,
             std::uint64_t mc_paths, std::uint64_t seed, bool seed_given) {
    if (step > 0.0) {
        spec.step = step;
    }
    if (mc_paths > 0) {
        spec.outputs.monte_carlo = true;
        spec.mc.paths = mc_paths;
    }
    if (seed_given) {
        spec.mc.seed = seed;
    }
    const thiele::RunResult result = thiele::run(spec, out_dir);
    for (const std::string& file : result.files_written) {
        std::printf("wrote %s\n", file.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Life-insurance reserves with reserve-dependent surrender"};
    app.require_subcommand(1);

    std::string spec_file;
    std::string builtin;
    std::string out_dir = ".";
    double step = 0.0;
    std::uint64_t mc_paths = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;

    CLI::App* cmd_run = app.add_subcommand("run", "Run a scenario spec");
    cmd_run->add_option("spec", spec_file, "Scenario spec file (JSON)");
    cmd_run->add_option("--builtin", builtin, "Built-in scenario name");
    cmd_run->add_option("--out", out_dir, "Output directory");
    cmd_run->add_option("--step", step, "Grid step in years (overrides spec)");
    cmd_run->add_option("--mc-paths", mc_paths,
                        "Enable Monte Carlo output with this many paths");
    cmd_run->add_option("--seed", seed, "Monte Carlo seed")
        ->each([&](const std::string&) { seed_given = true; });

    CLI::App* cmd_list =
        app.add_subcommand("list", "List built-in scenarios and models");

    std::string family = "indicator";
    std::vector<double> thetas{0.5, 1.0, 2.0, 5.0, 10.0};
    double psi = 0.05;
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep", "Sweep the rationality parameter against the worst case");
    cmd_sweep->add_option("--builtin", builtin, "Built-in scenario name")
        ->required();
    cmd_sweep->add_option("--family", family, "indicator or exponential");
    cmd_sweep->add_option("--thetas", thetas, "Ascending theta values")
        ->delimiter(',');
    cmd_sweep->add_option("--psi", psi, "Base intensity (exponential family)");
    cmd_sweep->add_option("--out", out_dir, "Output directory");
    cmd_sweep->add_option("--step", step, "Grid step in years (overrides spec)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_list->parsed()) {
            const thiele::BuiltinCatalog catalog = thiele::list_builtins();
            std::printf("scenarios:\n");
            for (const auto& e : catalog.examples) {
                std::printf("  %-10s %s\n", e.name.c_str(), e.description.c_str());
            }
            std::printf("models:\n");
            for (const auto& m : catalog.models) {
                std::printf("  %-10s %s\n", m.name.c_str(), m.description.c_str());
            }
            return 0;
        }
        if (cmd_run->parsed()) {
            if (spec_file.empty() == builtin.empty()) {
                std::fprintf(stderr,
                             "run: give either a spec file or --builtin <name>\n");
                return 2;
            }
            thiele::ScenarioSpec spec = builtin.empty()
                                            ? thiele::ScenarioSpec::load(spec_file)
                                            : thiele::builtin_scenario(builtin);
            return run_spec(std::move(spec), out_dir, step, mc_paths, seed,
                            seed_given);
        }
        if (cmd_sweep->parsed()) {
            thiele::ScenarioSpec spec = thiele::builtin_scenario(builtin);
            spec.outputs = thiele::OutputToggles{};
            spec.outputs.theta_sweep = true;
            spec.sweep.family = family;
            spec.sweep.psi = psi;
            spec.sweep.thetas = thetas;
            return run_spec(std::move(spec), out_dir, step, 0, seed, seed_given);
        }
    } catch (const thiele::SpecValidationError& err) {
        std::fprintf(stderr, "spec validation failed:\n");
        for (const std::string& v : err.violations) {
            std::fprintf(stderr, "  %s\n", v.c_str());
        }
        return 2;
    } catch (const thiele::NumericalError& err) {
        std::fprintf(stderr, "solver failure at t=%g: %s\n", err.time, err.what());
        return 1;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
