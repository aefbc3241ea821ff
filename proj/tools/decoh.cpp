// decoh: batch driver for rate, evolve, scan, invert, oracle and synth runs.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "decoh/cli.hpp"
#include "decoh/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Decoherence of trapped particles in an ultracold buffer gas"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    const std::map<std::string, std::string> help{
        {"rate", "coefficients and rates for one state pair at one field"},
        {"evolve", "time series of eta, |rho_ab| and populations (evolve.csv)"},
        {"scan", "adaptive magnetic-field scan and suppression windows (scan.csv)"},
        {"invert", "recover an unknown scattering length from rates (invert.csv)"},
        {"oracle", "square-well scattering length by Numerov integration"},
        {"synth", "synthetic rate measurements with seeded noise (synth.csv)"},
    };
    for (const auto& name : decoh::cli::kSubcommands) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config,-c", config_path, "run configuration (.toml or .json)")->required();
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--out,-o", out_dir, "override the output directory");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? decoh::cli::ok : decoh::cli::validation_error;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    decoh::RunConfig cfg;
    try {
        cfg = decoh::load_config(config_path);
    } catch (const decoh::ConfigValidationError& e) {
        for (const auto& issue : e.issues()) std::cerr << "error: " << issue.location << ": " << issue.message << "\n";
        return decoh::cli::validation_error;
    } catch (const decoh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return decoh::cli::validation_error;
    }

    decoh::cli::Overrides ov;
    ov.seed = seed;
    ov.output_directory = out_dir;
    ov.threads = decoh::default_thread_count();
    return decoh::cli::run_subcommand(name, cfg, ov, std::cout, std::cerr);
}
