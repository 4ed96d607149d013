// decolab — scenario-driven decoherence laboratory.
//
//   decolab <subcommand> --config <file> [--out <dir>]
//   decolab --list-scenarios [--scenario-dir <dir>]
//
// Subcommands mirror the experiment tags. Exit codes: 2 config error,
// 3 numeric error, 4 I/O error.

#include "decolab/config.hpp"
#include "decolab/errors.hpp"
#include "decolab/scenario.hpp"
#include "decolab/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>

namespace {

int list_scenarios(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        std::cerr << "no scenario directory at " << dir << "\n";
        return 4;
    }
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".cfg") {
            names.push_back(entry.path().filename().string());
        }
    }
    std::sort(names.begin(), names.end());
    for (const auto& n : names) std::cout << n << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decolab — numerical decoherence laboratory"};
    app.set_version_flag("--version", decolab::kVersion);

    bool list = false;
    std::string scenario_dir = "scenarios";
    app.add_flag("--list-scenarios", list, "List shipped scenario files");
    app.add_option("--scenario-dir", scenario_dir, "Directory with scenario files");

    std::string config_path;
    std::string out_dir;
    std::vector<CLI::App*> subs;
    for (const auto& tag : decolab::cli::experiment_tags()) {
        CLI::App* sub = app.add_subcommand(tag, "Run a `" + tag + "` scenario");
        sub->add_option("--config", config_path, "Scenario config file")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides config)");
        subs.push_back(sub);
    }
    app.require_subcommand(0, 1);

    CLI11_PARSE(app, argc, argv);

    if (list) return list_scenarios(scenario_dir);

    CLI::App* active = nullptr;
    for (auto* sub : subs) {
        if (sub->parsed()) active = sub;
    }
    if (!active) {
        std::cout << app.help();
        return 0;
    }

    try {
        decolab::cli::ScenarioConfig cfg = decolab::cli::load_config(config_path);
        if (cfg.experiment != active->get_name()) {
            throw decolab::ValidationError("config declares experiment `" + cfg.experiment +
                                           "` but subcommand is `" + active->get_name() +
                                           "`");
        }
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        const decolab::cli::RunReport report = decolab::cli::run_scenario(cfg);
        std::cout << decolab::cli::describe(report);
        return 0;
    } catch (const decolab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
