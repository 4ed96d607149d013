// config.hpp — Line-oriented `key = value` scenario configs with a fixed
// per-experiment key schema.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace decolab::cli {

struct ScenarioConfig {
    std::string experiment;
    std::map<std::string, std::string> params;  // validated, defaults filled
    std::filesystem::path output_dir = "out";
    long seed = 0;  // reserved; every current model is deterministic

    double number(const std::string& key) const;
    int integer(const std::string& key) const;
    const std::string& text(const std::string& key) const;
};

// Known experiment tags, in the order they are documented.
const std::vector<std::string>& experiment_tags();

// Parse and validate. Throws ParseError (with line number), MissingKey,
// UnknownKey, or ValidationError.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config(const std::filesystem::path& file);

} // namespace decolab::cli
