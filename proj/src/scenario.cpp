#include "decolab/scenario.hpp"

#include "decolab/csv.hpp"
#include "decolab/density.hpp"
#include "decolab/errors.hpp"
#include "decolab/master.hpp"
#include "decolab/rates.hpp"
#include "decolab/version.hpp"
#include "decolab/wigner.hpp"
#include "decolab/zeno.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <thread>

namespace decolab::cli {

namespace {

void echo_config(CsvWriter& csv, const ScenarioConfig& cfg) {
    csv.comment(std::string("decolab ") + kVersion);
    csv.comment("experiment = " + cfg.experiment);
    for (const auto& [k, v] : cfg.params) {  // std::map: sorted, deterministic
        csv.comment(k + " = " + v);
    }
    csv.comment(std::string("units = ") + "natural");
}

SpatialGrid grid_from(const ScenarioConfig& cfg) {
    return make_grid(cfg.integer("grid_n"), cfg.number("x_min"), cfg.number("x_max"));
}

std::filesystem::path out_file(const ScenarioConfig& cfg, const std::string& name,
                               const std::string& suffix, const std::string& ext) {
    std::filesystem::create_directories(cfg.output_dir);
    return cfg.output_dir / (name + suffix + ext);
}

void write_density_csv(const ScenarioConfig& cfg, const std::filesystem::path& file,
                       const DensityMatrix& rho) {
    CsvWriter csv(file);
    echo_config(csv, cfg);
    csv.header({"x", "x_prime", "re", "im", "abs"});
    const SpatialGrid& g = *rho.grid;
    for (int i = 0; i < g.n_points; ++i) {
        for (int j = 0; j < g.n_points; ++j) {
            const Complex v = rho.elements(i, j);
            csv.row({g.point(i), g.point(j), v.real(), v.imag(), std::abs(v)});
        }
    }
}

WaveFunction cat_state(const SpatialGrid& grid, double separation, double width,
                       double momentum) {
    const WaveFunction a = build_gaussian_packet(grid, -separation / 2.0, width, momentum);
    const WaveFunction b = build_gaussian_packet(grid, separation / 2.0, width, momentum);
    return superpose(a, b, 1.0, 1.0);
}

// ------------------------------------------------------------- experiments

void run_localize(const ScenarioConfig& cfg, RunReport& rep) {
    const SpatialGrid grid = grid_from(cfg);
    const WaveFunction psi =
        cat_state(grid, cfg.number("separation"), cfg.number("width"),
                  cfg.number("momentum"));
    const DensityMatrix rho0 = pure_density(psi);
    const DensityMatrix rho1 =
        rates::apply_spatial_decoherence(rho0, cfg.number("lambda_t"), 1.0);

    const auto f0 = out_file(cfg, "localize_rho_initial", "", ".csv");
    const auto f1 = out_file(cfg, "localize_rho_decohered", "", ".csv");
    write_density_csv(cfg, f0, rho0);
    write_density_csv(cfg, f1, rho1);

    const auto f2 = out_file(cfg, "localize_position", "", ".csv");
    {
        CsvWriter csv(f2);
        echo_config(csv, cfg);
        csv.header({"x", "density_initial", "density_decohered"});
        const RVec d0 = position_distribution(rho0);
        const RVec d1 = position_distribution(rho1);
        for (int i = 0; i < grid.n_points; ++i) {
            csv.row({grid.point(i), d0[i], d1[i]});
        }
    }
    rep.outputs = {f0, f1, f2};
    rep.diagnostics["hermiticity_residue"] = rho1.hermiticity_residue();
    rep.diagnostics["trace_error"] = std::abs(rho1.trace_real() - 1.0);
    rep.diagnostics["coherence_length_initial"] = coherence_length(rho0);
    rep.diagnostics["coherence_length_decohered"] = coherence_length(rho1);
}

void write_series(const ScenarioConfig& cfg, const std::string& suffix,
                  const master::CoherenceSeries& series, RunReport& rep) {
    const auto file = out_file(cfg, "evolve_series", suffix, ".csv");
    CsvWriter csv(file);
    echo_config(csv, cfg);
    if (series.truncated) csv.comment("truncated = true");
    csv.header({"t", "coherence_length", "trace_error", "purity"});
    for (const auto& p : series.points) {
        csv.row({p.t, p.coherence_length, p.trace_error, p.purity});
    }
    rep.outputs.push_back(file);
    rep.diagnostics["boundary_leak"] = series.truncated ? 1.0 : 0.0;
    if (!series.points.empty()) {
        rep.diagnostics["final_trace_error"] = series.points.back().trace_error;
        rep.diagnostics["final_coherence_length"] =
            series.points.back().coherence_length;
    }
}

void run_evolve_free(const ScenarioConfig& cfg, RunReport& rep,
                     const std::string& suffix = "") {
    const SpatialGrid grid = grid_from(cfg);
    const WaveFunction psi0 = build_gaussian_packet(
        grid, cfg.number("center"), cfg.number("sigma0"), cfg.number("momentum"));
    master::FreeDecoherenceModel model{cfg.number("mass"), cfg.number("lambda")};
    master::IntegrationPlan plan{cfg.number("dt"), cfg.integer("n_steps"),
                                 cfg.integer("record_every"),
                                 cfg.text("scheme") == "rk4" ? master::Scheme::rk4
                                                             : master::Scheme::split_step};
    write_series(cfg, suffix, master::coherence_length_series(model, psi0, plan), rep);
}

void run_evolve_cl(const ScenarioConfig& cfg, RunReport& rep,
                   const std::string& suffix = "") {
    const SpatialGrid grid = grid_from(cfg);
    const WaveFunction psi0 = build_gaussian_packet(
        grid, cfg.number("center"), cfg.number("sigma0"), cfg.number("momentum"));
    master::CaldeiraLeggettModel model{cfg.number("mass"), cfg.number("damping"),
                                       cfg.number("temperature")};
    master::IntegrationPlan plan{cfg.number("dt"), cfg.integer("n_steps"),
                                 cfg.integer("record_every"),
                                 master::Scheme::split_step};
    write_series(cfg, suffix, master::coherence_length_series(model, psi0, plan), rep);
}

void write_wigner_binary(const std::filesystem::path& file,
                         const wigner::WignerFunction& w) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + file.string());
    // Header: magic, version, dims, origins and spacings, unit tag; then
    // row-major float64 values (native endianness).
    const char magic[4] = {'D', 'W', 'I', 'G'};
    out.write(magic, 4);
    const std::uint32_t version = 1;
    const std::uint32_t nx = static_cast<std::uint32_t>(w.values.rows());
    const std::uint32_t np = static_cast<std::uint32_t>(w.values.cols());
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&nx), 4);
    out.write(reinterpret_cast<const char*>(&np), 4);
    const double geom[4] = {w.xgrid.x_min, w.xgrid.spacing(), w.p[0], w.dp()};
    out.write(reinterpret_cast<const char*>(geom), sizeof geom);
    const std::uint8_t units = 0;  // natural
    out.write(reinterpret_cast<const char*>(&units), 1);
    for (Eigen::Index i = 0; i < w.values.rows(); ++i) {
        for (Eigen::Index k = 0; k < w.values.cols(); ++k) {
            const double v = w.values(i, k);
            out.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
    }
}

void run_wigner(const ScenarioConfig& cfg, RunReport& rep,
                const std::string& suffix = "") {
    const SpatialGrid grid = grid_from(cfg);
    const std::string& source = cfg.text("source");
    DensityMatrix rho = [&] {
        if (source == "gaussian") {
            return pure_density(
                build_gaussian_packet(grid, 0.0, cfg.number("width"), 0.0));
        }
        if (source == "cat") {
            return pure_density(
                cat_state(grid, cfg.number("separation"), cfg.number("width"), 0.0));
        }
        return pure_density(
            wigner::oscillator_eigenstate(grid, cfg.integer("osc_n"), cfg.number("omega")));
    }();
    rates::apply_spatial_decoherence_inplace(rho, cfg.number("lambda_t"), 1.0);
    const wigner::WignerFunction w = wigner::wigner_transform(rho);

    const auto fgrid = out_file(cfg, "wigner_grid", suffix, ".csv");
    {
        CsvWriter csv(fgrid);
        echo_config(csv, cfg);
        csv.header({"x", "p", "w"});
        for (int i = 0; i < grid.n_points; ++i) {
            for (int k = 0; k < grid.n_points; ++k) {
                csv.row({grid.point(i), w.p[k], w.values(i, k)});
            }
        }
    }
    const auto fmarg = out_file(cfg, "wigner_marginal", suffix, ".csv");
    {
        CsvWriter csv(fmarg);
        echo_config(csv, cfg);
        csv.header({"x", "marginal", "rho_diag"});
        const RVec m = wigner::marginal_position(w);
        const RVec d = position_distribution(rho);
        for (int i = 0; i < grid.n_points; ++i) {
            csv.row({grid.point(i), m[i], d[i]});
        }
    }
    const auto fbin = out_file(cfg, "wigner", suffix, ".wgb");
    write_wigner_binary(fbin, w);

    rep.outputs = {fgrid, fmarg, fbin};
    if (cfg.integer("dump_rho") != 0) {
        const auto frho = out_file(cfg, "wigner_rho", suffix, ".csv");
        write_density_csv(cfg, frho, rho);
        rep.outputs.push_back(frho);
    }
    rep.diagnostics["min_w"] = w.values.minCoeff();
    rep.diagnostics["normalisation"] = w.total();
    rep.diagnostics["var_x"] = wigner::variance_x(w);
    rep.diagnostics["var_p"] = wigner::variance_p(w);
}

void run_zeno_analytic(const ScenarioConfig& cfg, RunReport& rep) {
    const double v = cfg.number("coupling");
    const double t = cfg.number("total_time");
    const int n_max = cfg.integer("n_max");
    const double gamma_decay = cfg.number("decay_rate");

    CMat h(2, 2);
    h << 0.0, v, v, 0.0;
    CVec u(2);
    u << 1.0, 0.0;
    const zeno::DecaySystem sys{h, u};

    const auto file = out_file(cfg, "zeno_repeated", "", ".csv");
    CsvWriter csv(file);
    echo_config(csv, cfg);
    csv.header({"n", "p_quantum", "p_classical"});
    for (int n = 1; n <= n_max; ++n) {
        csv.row({static_cast<double>(n),
                 zeno::repeated_measurement_survival(sys, t, n),
                 zeno::classical_decay_survival(gamma_decay, t, n)});
    }
    rep.outputs = {file};
    rep.diagnostics["single_shot"] = zeno::survival_probability(sys, t);
    rep.diagnostics["energy_variance"] = zeno::energy_variance(sys);
}

void run_zeno_pointer(const ScenarioConfig& cfg, RunReport& rep,
                      const std::string& suffix = "") {
    const SpatialGrid grid = grid_from(cfg);
    zeno::PointerModel model{cfg.number("transition"), cfg.number("level_offset"),
                             cfg.number("coupling"), grid, cfg.number("pointer_width")};

    if (!cfg.text("scan_couplings").empty() && cfg.text("scan_couplings") != "none") {
        std::vector<double> gammas;
        std::stringstream ss(cfg.text("scan_couplings"));
        std::string item;
        while (std::getline(ss, item, ',')) gammas.push_back(std::stod(item));
        const auto scan =
            zeno::coupling_scan(model, cfg.number("t_total"), gammas, cfg.number("dt"));
        const auto file = out_file(cfg, "pointer_scan", suffix, ".csv");
        CsvWriter csv(file);
        echo_config(csv, cfg);
        csv.header({"gamma", "p2_at_t"});
        for (const auto& [g, p2] : scan) csv.row({g, p2});
        rep.outputs = {file};
        rep.diagnostics["scan_points"] = static_cast<double>(scan.size());
        return;
    }

    zeno::PointerPlan plan;
    plan.dt = cfg.number("dt");
    plan.n_steps = std::max(1, static_cast<int>(std::lround(cfg.number("t_total") / plan.dt)));
    plan.record_every = cfg.integer("record_every");
    const zeno::PointerSeries series = zeno::evolve_pointer_model(model, plan);

    const auto file = out_file(cfg, "pointer_p2", suffix, ".csv");
    CsvWriter csv(file);
    echo_config(csv, cfg);
    if (series.truncated) csv.comment("truncated = true");
    csv.header({"t", "p2"});
    for (const auto& pt : series.points) csv.row({pt.t, pt.p2});
    rep.outputs = {file};
    rep.diagnostics["boundary_leak"] = series.truncated ? 1.0 : 0.0;
    rep.diagnostics["final_p2"] = series.points.back().p2;
    rep.diagnostics["max_norm_error"] = [&] {
        double m = 0.0;
        for (const auto& pt : series.points) m = std::max(m, pt.norm_error);
        return m;
    }();
}

void run_chiral(const ScenarioConfig& cfg, RunReport& rep) {
    const zeno::ChiralModel model{cfg.number("splitting"),
                                  cfg.number("monitoring_rate")};
    const int samples = cfg.integer("samples");
    const double t_total = cfg.number("t_total");

    DensityMatrix rho0 = [&] {
        if (cfg.text("initial") == "left") {
            return pure_discrete_density(zeno::chiral_states().left);
        }
        CVec ground(2);
        ground << 1.0, 0.0;
        return pure_discrete_density(ground);
    }();

    const auto file = out_file(cfg, "chiral_pl", "", ".csv");
    CsvWriter csv(file);
    echo_config(csv, cfg);
    csv.header({"t", "p_left"});
    for (int s = 0; s <= samples; ++s) {
        const double t = t_total * s / samples;
        csv.row({t, zeno::left_population(zeno::evolve_chiral(model, rho0, t))});
    }
    rep.outputs = {file};
    rep.diagnostics["final_p_left"] =
        zeno::left_population(zeno::evolve_chiral(model, rho0, t_total));
}

void run_qed(const ScenarioConfig& cfg, RunReport& rep) {
    rates::QedScenario s;
    s.charge = cfg.number("charge");
    s.mass = cfg.number("mass");
    s.field = cfg.number("field");
    s.volume = cfg.number("volume");
    const double t_min = cfg.number("t_min");
    const double t_max = cfg.number("t_max");
    const int samples = cfg.integer("samples");
    const bool strong = s.field > s.critical_field();

    const auto file = out_file(cfg, "qed_factors", "", ".csv");
    CsvWriter csv(file);
    echo_config(csv, cfg);
    std::vector<std::string> cols = {"t", "d_v", "d_pc", "log_d_v", "log_d_pc"};
    if (strong) cols.push_back("dominance_ratio");
    csv.header(cols);
    for (int i = 0; i < samples; ++i) {
        const double f = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
        s.time = t_min * std::pow(t_max / t_min, f);
        std::vector<double> vals = {s.time, rates::qed_vacuum_factor(s),
                                    rates::qed_pair_factor(s),
                                    rates::log_qed_vacuum_factor(s),
                                    rates::log_qed_pair_factor(s)};
        if (strong) vals.push_back(rates::qed_dominance_ratio(s));
        std::vector<std::string> cells;
        for (double v : vals) cells.push_back(format_double(v));
        csv.row(cells);
    }
    rep.outputs = {file};
    s.time = t_max;
    rep.diagnostics["d_v_at_t_max"] = rates::qed_vacuum_factor(s);
    rep.diagnostics["d_v_limit"] = rates::qed_vacuum_factor_limit(s);
}

void run_gravity(const ScenarioConfig& cfg, RunReport& rep) {
    rates::GravityScenario s;
    s.number_density = cfg.number("number_density");
    s.particle_mass = cfg.number("particle_mass");
    s.temperature = cfg.number("temperature");
    s.box_size = cfg.number("box_size");
    s.elapsed_time = cfg.number("time");
    const double g_ref = cfg.number("g_ref");

    const double rate = rates::gravity_rate(s);
    const double width = rates::gravity_coherence_width(s, g_ref);

    const auto file = out_file(cfg, "gravity", "", ".csv");
    CsvWriter csv(file);
    echo_config(csv, cfg);
    csv.header({"gamma_rate", "dg_over_g"});
    csv.row({rate, width});
    rep.outputs = {file};
    rep.diagnostics["gamma_rate"] = rate;
    rep.diagnostics["dg_over_g"] = width;
    std::ostringstream note;
    note << "dg_over_g = " << format_double(width);
    rep.notes.push_back(note.str());
}

void run_ratio(const ScenarioConfig& cfg, RunReport& rep) {
    const double ratio = master::decoherence_relaxation_ratio(
        cfg.number("mass_g"), cfg.number("temperature"), cfg.number("separation_cm"));
    const double lam_th = master::thermal_de_broglie_wavelength(
        cfg.number("mass_g"), cfg.number("temperature"));

    const auto file = out_file(cfg, "ratio", "", ".csv");
    CsvWriter csv(file);
    echo_config(csv, cfg);
    csv.header({"decoherence_over_relaxation", "thermal_wavelength_cm"});
    csv.row({ratio, lam_th});
    rep.outputs = {file};
    rep.diagnostics["decoherence_over_relaxation"] = ratio;
    std::ostringstream note;
    note << "decoherence/relaxation = " << format_double(ratio);
    rep.notes.push_back(note.str());
}

void run_table1(const ScenarioConfig& cfg, RunReport& rep) {
    const auto presets = rates::load_table1_presets(cfg.text("presets"));
    const auto rows = rates::table1_generate(presets);

    const auto file = out_file(cfg, "table1_report", "", ".csv");
    CsvWriter csv(file);
    echo_config(csv, cfg);
    csv.header({"environment", "size_cm", "wave_number", "flux", "sigma_eff", "regime",
                "lambda", "reference_log10", "log10_deviation"});
    double worst = 0.0;
    for (const auto& r : rows) {
        csv.row({r.preset.environment, format_double(r.preset.size_cm),
                 format_double(r.preset.wave_number), format_double(r.preset.flux),
                 format_double(r.preset.sigma_eff), r.preset.regime,
                 format_double(r.lambda), format_double(r.preset.paper_log10),
                 format_double(r.log10_deviation)});
        worst = std::max(worst, std::abs(r.log10_deviation));
    }
    rep.outputs = {file};
    rep.diagnostics["cells"] = static_cast<double>(rows.size());
    rep.diagnostics["worst_log10_deviation"] = worst;
}

void run_sweep(const ScenarioConfig& cfg, RunReport& rep);

void dispatch(const ScenarioConfig& cfg, RunReport& rep, const std::string& suffix) {
    if (cfg.experiment == "localize") return run_localize(cfg, rep);
    if (cfg.experiment == "evolve-free") return run_evolve_free(cfg, rep, suffix);
    if (cfg.experiment == "evolve-cl") return run_evolve_cl(cfg, rep, suffix);
    if (cfg.experiment == "wigner") return run_wigner(cfg, rep, suffix);
    if (cfg.experiment == "zeno-analytic") return run_zeno_analytic(cfg, rep);
    if (cfg.experiment == "zeno-pointer") return run_zeno_pointer(cfg, rep, suffix);
    if (cfg.experiment == "chiral") return run_chiral(cfg, rep);
    if (cfg.experiment == "qed") return run_qed(cfg, rep);
    if (cfg.experiment == "gravity") return run_gravity(cfg, rep);
    if (cfg.experiment == "ratio") return run_ratio(cfg, rep);
    if (cfg.experiment == "table1") return run_table1(cfg, rep);
    if (cfg.experiment == "sweep") return run_sweep(cfg, rep);
    throw ValidationError("unknown experiment `" + cfg.experiment + "`");
}

void run_sweep(const ScenarioConfig& cfg, RunReport& rep) {
    const std::string base = cfg.text("base");
    const std::string key = cfg.text("sweep_key");
    std::vector<std::string> values;
    {
        std::stringstream ss(cfg.text("sweep_values"));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto a = item.find_first_not_of(" \t");
            const auto b = item.find_last_not_of(" \t");
            values.push_back(item.substr(a, b - a + 1));
        }
    }

    // Child configs go back through the parser so base-schema validation and
    // defaults apply uniformly.
    std::vector<ScenarioConfig> children;
    for (const auto& v : values) {
        std::ostringstream text;
        text << "experiment = " << base << "\n";
        for (const auto& [k, val] : cfg.params) {
            if (k == "base" || k == "sweep_key" || k == "sweep_values" || k == "workers")
                continue;
            if (k == key) continue;
            text << k << " = " << val << "\n";
        }
        text << key << " = " << v << "\n";
        ScenarioConfig child = parse_config(text.str());
        child.output_dir = cfg.output_dir;
        children.push_back(std::move(child));
    }

    int workers = cfg.integer("workers");
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers <= 0) workers = 2;
    }
    workers = std::min<int>(workers, static_cast<int>(children.size()));

    std::vector<RunReport> reports(children.size());
    std::vector<std::string> errors(children.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < children.size();
             i = next.fetch_add(1)) {
            try {
                RunReport r;
                r.experiment = children[i].experiment;
                dispatch(children[i], r, "_" + key + "=" + values[i]);
                reports[i] = std::move(r);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (std::size_t i = 0; i < children.size(); ++i) {
        if (!errors[i].empty()) {
            throw NumericError("sweep member " + key + "=" + values[i] +
                               " failed: " + errors[i]);
        }
        for (const auto& f : reports[i].outputs) rep.outputs.push_back(f);
        for (const auto& [k, v] : reports[i].diagnostics) {
            rep.diagnostics[k + "[" + key + "=" + values[i] + "]"] = v;
        }
    }
}

} // namespace

RunReport run_scenario(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.experiment = cfg.experiment;
    rep.config_echo = cfg.params;
    const auto t0 = std::chrono::steady_clock::now();
    dispatch(cfg, rep, "");
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& f : rep.outputs) {
        if (!std::filesystem::exists(f)) {
            throw IoError("declared output missing: " + f.string());
        }
    }
    return rep;
}

std::string describe(const RunReport& rep) {
    std::ostringstream out;
    out << "experiment: " << rep.experiment << "\n";
    out << "wall_seconds: " << rep.wall_seconds << "\n";
    for (const auto& [k, v] : rep.diagnostics) {
        out << "  " << k << " = " << format_double(v) << "\n";
    }
    for (const auto& n : rep.notes) out << n << "\n";
    out << "outputs:\n";
    for (const auto& f : rep.outputs) out << "  " << f.string() << "\n";
    return out.str();
}

} // namespace decolab::cli
