// scenario.hpp — Runs a validated config and emits its CSV/binary outputs.

#pragma once

#include "decolab/config.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace decolab::cli {

struct RunReport {
    std::string experiment;
    std::map<std::string, std::string> config_echo;
    double wall_seconds = 0.0;
    std::map<std::string, double> diagnostics;  // trace drift, residues, flags
    std::vector<std::filesystem::path> outputs;
    std::vector<std::string> notes;  // human-readable result lines
};

// Deterministic apart from wall_seconds: identical configs produce
// byte-identical output files.
RunReport run_scenario(const ScenarioConfig& cfg);

std::string describe(const RunReport& report);

} // namespace decolab::cli
