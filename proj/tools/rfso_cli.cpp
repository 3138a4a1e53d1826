// Experiment runner for ARQ-based hybrid RF-FSO link analysis.
//
// Subcommands:
//   sweep    - run a parameter sweep and emit per-engine curve data as CSV
//   alloc    - compare power-allocation schemes under an energy budget
//   validate - cross-check all engines against the Monte Carlo oracle
//   moments  - print the FSO log-moments for a parameter set

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rfso/errors.hpp"
#include "rfso/runner.hpp"
#include "rfso/scenario.hpp"

namespace {

struct CommonArgs {
    std::string scenario_path;
    std::string out_path;
    std::string engine;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool engine_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "Scenario file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_path, "Override the scenario's CSV output path");
    cmd->add_option("--seed", args.seed, "Override the scenario's Monte Carlo seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--engine", args.engine, "Override the scenario's engine")
        ->each([&args](const std::string&) { args.engine_set = true; });
}

rfso::cli::EngineChoice parse_engine(const std::string& name) {
    using rfso::cli::EngineChoice;
    if (name == "clt") return EngineChoice::clt;
    if (name == "clt_exactq") return EngineChoice::clt_exactq;
    if (name == "minkowski") return EngineChoice::minkowski;
    if (name == "montecarlo") return EngineChoice::montecarlo;
    if (name == "all") return EngineChoice::all;
    throw rfso::config_error("unknown engine '" + name + "'");
}

rfso::cli::ScenarioFile load(const CommonArgs& args) {
    rfso::cli::ScenarioFile sc = rfso::cli::parse_scenario_file(args.scenario_path);
    if (!args.out_path.empty()) sc.csv_path = args.out_path;
    if (args.seed_set) sc.seed = args.seed;
    if (args.engine_set) sc.engine = parse_engine(args.engine);
    return sc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ARQ-based hybrid RF-FSO link performance calculator"};
    app.require_subcommand(1);

    CommonArgs sweep_args, alloc_args, validate_args, moments_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep to CSV");
    add_common(sweep, sweep_args);
    CLI::App* alloc = app.add_subcommand("alloc", "Compare power-allocation schemes to CSV");
    add_common(alloc, alloc_args);
    CLI::App* validate = app.add_subcommand("validate", "Cross-check engines against Monte Carlo");
    add_common(validate, validate_args);
    CLI::App* moments = app.add_subcommand("moments", "Print FSO log-moments");
    add_common(moments, moments_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) {
            rfso::cli::run_sweep_to_csv(load(sweep_args));
        } else if (alloc->parsed()) {
            rfso::cli::run_power_alloc_to_csv(load(alloc_args));
        } else if (validate->parsed()) {
            rfso::cli::run_validate_to_csv(load(validate_args), std::cout);
        } else if (moments->parsed()) {
            rfso::cli::write_moments(rfso::cli::run_moments(load(moments_args)), std::cout);
        }
    } catch (const rfso::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const rfso::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
