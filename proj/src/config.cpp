#include "decolab/config.hpp"

#include "decolab/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace decolab::cli {

namespace {

enum class Check { none, positive, non_negative, int_ge0, int_ge1, grid_size, choice };

struct KeySpec {
    const char* key;
    const char* def;  // nullptr marks a required key
    Check check = Check::none;
    const char* choices = nullptr;  // '|'-separated, for Check::choice
};

using Schema = std::vector<KeySpec>;

const std::map<std::string, Schema>& schemas() {
    static const std::map<std::string, Schema> table = {
        {"localize",
         {{"grid_n", "256", Check::grid_size},
          {"x_min", "-16"},
          {"x_max", "16"},
          {"separation", "8", Check::positive},
          {"width", "1", Check::positive},
          {"momentum", "0"},
          {"lambda_t", "0.0625", Check::non_negative}}},
        {"evolve-free",
         {{"grid_n", "512", Check::grid_size},
          {"x_min", "-8"},
          {"x_max", "8"},
          {"mass", "1", Check::positive},
          {"lambda", nullptr, Check::non_negative},
          {"sigma0", "1", Check::positive},
          {"center", "0"},
          {"momentum", "0"},
          {"dt", "0.01", Check::positive},
          {"n_steps", "1000", Check::int_ge1},
          {"record_every", "10", Check::int_ge1},
          {"scheme", "split-step", Check::choice, "split-step|rk4"}}},
        {"evolve-cl",
         {{"grid_n", "128", Check::grid_size},
          {"x_min", "-10"},
          {"x_max", "10"},
          {"mass", "1", Check::positive},
          {"damping", nullptr, Check::non_negative},
          {"temperature", nullptr, Check::non_negative},
          {"sigma0", "1.5", Check::positive},
          {"center", "0"},
          {"momentum", "0.5"},
          {"dt", "0.002", Check::positive},
          {"n_steps", "1000", Check::int_ge1},
          {"record_every", "10", Check::int_ge1}}},
        {"wigner",
         {{"source", "gaussian", Check::choice, "gaussian|cat|oscillator"},
          {"grid_n", "256", Check::grid_size},
          {"x_min", "-10"},
          {"x_max", "10"},
          {"width", "0.7071067811865476", Check::positive},
          {"separation", "8", Check::positive},
          {"osc_n", "9", Check::int_ge0},
          {"omega", "1", Check::positive},
          {"lambda_t", "0", Check::non_negative},
          {"dump_rho", "0", Check::int_ge0}}},
        {"zeno-analytic",
         {{"coupling", "1", Check::non_negative},
          {"total_time", "1", Check::positive},
          {"n_max", "64", Check::int_ge1},
          {"decay_rate", "0.6931471805599453", Check::non_negative}}},
        {"zeno-pointer",
         {{"transition", "1", Check::non_negative},
          {"level_offset", "0"},
          {"coupling", "8", Check::non_negative},
          {"pointer_width", "1", Check::positive},
          {"grid_n", "512", Check::grid_size},
          {"x_min", "-120"},
          {"x_max", "120"},
          {"dt", "0.001", Check::positive},
          {"t_total", "6", Check::positive},
          {"record_every", "50", Check::int_ge1},
          {"scan_couplings", "none"}}},
        {"chiral",
         {{"splitting", "1", Check::positive},
          {"monitoring_rate", "100", Check::non_negative},
          {"t_total", "62.83185307179586", Check::positive},
          {"samples", "400", Check::int_ge1},
          {"initial", "left", Check::choice, "left|ground"}}},
        {"qed",
         {{"charge", "1", Check::positive},
          {"mass", "1", Check::positive},
          {"field", "2", Check::non_negative},
          {"volume", "1", Check::positive},
          {"t_min", "0.1", Check::positive},
          {"t_max", "100", Check::positive},
          {"samples", "61", Check::int_ge1}}},
        {"gravity",
         {{"number_density", "2.7e19", Check::positive},
          {"particle_mass", "4.6495e-23", Check::positive},
          {"temperature", "300", Check::positive},
          {"box_size", "1", Check::positive},
          {"time", "1", Check::positive},
          {"g_ref", "981", Check::positive}}},
        {"ratio",
         {{"mass_g", "1", Check::positive},
          {"temperature", "300", Check::positive},
          {"separation_cm", "1", Check::positive}}},
        {"table1", {{"presets", "data/table1_presets.txt"}}},
        {"sweep",
         {{"base", nullptr, Check::choice,
           "localize|evolve-free|evolve-cl|wigner|zeno-analytic|zeno-pointer|chiral|"
           "qed|gravity|ratio|table1"},
          {"sweep_key", nullptr},
          {"sweep_values", nullptr},
          {"workers", "0", Check::int_ge0}}},
    };
    return table;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ValidationError("key `" + key + "` expects a number, got `" + value + "`");
    }
    if (pos != value.size()) {
        throw ValidationError("key `" + key + "` expects a number, got `" + value + "`");
    }
    return v;
}

long parse_integer(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    const long n = static_cast<long>(v);
    if (static_cast<double>(n) != v) {
        throw ValidationError("key `" + key + "` expects an integer, got `" + value + "`");
    }
    return n;
}

void run_check(const KeySpec& spec, const std::string& value) {
    const std::string key = spec.key;
    switch (spec.check) {
        case Check::none:
            if (key != "presets" && key != "sweep_key" && key != "sweep_values" &&
                key != "scan_couplings") {
                parse_number(key, value);  // free-form numeric keys still parse
            }
            break;
        case Check::positive:
            if (!(parse_number(key, value) > 0.0)) {
                throw ValidationError("key `" + key + "` must be positive");
            }
            break;
        case Check::non_negative:
            if (parse_number(key, value) < 0.0) {
                throw ValidationError("key `" + key + "` must be non-negative");
            }
            break;
        case Check::int_ge0:
            if (parse_integer(key, value) < 0) {
                throw ValidationError("key `" + key + "` must be a non-negative integer");
            }
            break;
        case Check::int_ge1:
            if (parse_integer(key, value) < 1) {
                throw ValidationError("key `" + key + "` must be a positive integer");
            }
            break;
        case Check::grid_size: {
            const long n = parse_integer(key, value);
            if (n < 8 || (n & (n - 1)) != 0) {
                throw ValidationError("key `" + key +
                                      "` must be a power of two no smaller than 8");
            }
            break;
        }
        case Check::choice: {
            std::string choices = spec.choices;
            std::stringstream ss(choices);
            std::string item;
            while (std::getline(ss, item, '|')) {
                if (item == value) return;
            }
            throw ValidationError("key `" + key + "` must be one of {" + choices +
                                  "}, got `" + value + "`");
        }
    }
}

void apply_schema(const Schema& schema, std::map<std::string, std::string>& params,
                  const std::map<std::string, std::string>& raw) {
    for (const auto& spec : schema) {
        auto it = raw.find(spec.key);
        if (it != raw.end()) {
            run_check(spec, it->second);
            params[spec.key] = it->second;
        } else if (spec.def) {
            params[spec.key] = spec.def;
        } else {
            throw MissingKey("missing required key `" + std::string(spec.key) + "`");
        }
    }
}

bool in_schema(const Schema& schema, const std::string& key) {
    return std::any_of(schema.begin(), schema.end(),
                       [&](const KeySpec& s) { return key == s.key; });
}

} // namespace

double ScenarioConfig::number(const std::string& key) const {
    return parse_number(key, text(key));
}

int ScenarioConfig::integer(const std::string& key) const {
    return static_cast<int>(parse_integer(key, text(key)));
}

const std::string& ScenarioConfig::text(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) {
        throw MissingKey("missing required key `" + key + "`");
    }
    return it->second;
}

const std::vector<std::string>& experiment_tags() {
    static const std::vector<std::string> tags = {
        "localize",     "evolve-free", "evolve-cl", "wigner",  "zeno-analytic",
        "zeno-pointer", "chiral",      "qed",       "gravity", "ratio",
        "table1",       "sweep"};
    return tags;
}

ScenarioConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(lineno) + ": expected `key = value`");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError("line " + std::to_string(lineno) + ": empty key or value");
        }
        if (raw.count(key)) {
            throw ParseError("line " + std::to_string(lineno) + ": duplicate key `" + key +
                             "`");
        }
        raw[key] = value;
    }

    auto exp_it = raw.find("experiment");
    if (exp_it == raw.end()) {
        throw MissingKey("missing required key `experiment`");
    }
    const std::string experiment = exp_it->second;
    auto schema_it = schemas().find(experiment);
    if (schema_it == schemas().end()) {
        throw ValidationError("unknown experiment `" + experiment + "`");
    }

    ScenarioConfig cfg;
    cfg.experiment = experiment;
    if (auto it = raw.find("output_dir"); it != raw.end()) cfg.output_dir = it->second;
    if (auto it = raw.find("seed"); it != raw.end()) {
        cfg.seed = parse_integer("seed", it->second);
    }

    const Schema& schema = schema_it->second;
    const Schema* base_schema = nullptr;
    if (experiment == "sweep") {
        auto base_it = raw.find("base");
        if (base_it == raw.end()) throw MissingKey("missing required key `base`");
        auto bs = schemas().find(base_it->second);
        if (bs == schemas().end() || base_it->second == "sweep") {
            throw ValidationError("key `base` must name a non-sweep experiment");
        }
        base_schema = &bs->second;
    }

    for (const auto& [key, value] : raw) {
        if (key == "experiment" || key == "output_dir" || key == "seed") continue;
        if (in_schema(schema, key)) continue;
        if (base_schema && in_schema(*base_schema, key)) continue;
        throw UnknownKey("unknown key `" + key + "` for experiment `" + experiment + "`");
    }

    apply_schema(schema, cfg.params, raw);
    if (base_schema) {
        // Base keys pass through verbatim; each child run re-validates them
        // against the base schema with the swept key substituted.
        const std::string& sweep_key = cfg.params.at("sweep_key");
        if (!in_schema(*base_schema, sweep_key)) {
            throw ValidationError("sweep_key `" + sweep_key +
                                  "` is not a key of the base experiment");
        }
        for (const auto& [k, v] : raw) {
            if (k == "experiment" || k == "output_dir" || k == "seed") continue;
            if (in_schema(schema, k)) continue;
            cfg.params[k] = v;
        }
    }

    // cross-field checks
    if (cfg.params.count("x_min") && cfg.params.count("x_max") &&
        !(cfg.number("x_max") > cfg.number("x_min"))) {
        throw ValidationError("key `x_max` must exceed `x_min`");
    }
    if (cfg.params.count("t_min") && cfg.params.count("t_max") &&
        !(cfg.number("t_max") > cfg.number("t_min"))) {
        throw ValidationError("key `t_max` must exceed `t_min`");
    }
    if (experiment == "sweep") {
        std::stringstream ss(cfg.params.at("sweep_values"));
        std::string item;
        int count = 0;
        while (std::getline(ss, item, ',')) {
            parse_number("sweep_values", trim(item));
            ++count;
        }
        if (count == 0) throw ValidationError("key `sweep_values` must list values");
    }
    if (auto it = cfg.params.find("scan_couplings");
        it != cfg.params.end() && it->second != "none") {
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (parse_number("scan_couplings", trim(item)) < 0.0) {
                throw ValidationError("key `scan_couplings` entries must be >= 0");
            }
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot open config file: " + file.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace decolab::cli
