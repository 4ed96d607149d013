#include "decolab/rates.hpp"

#include "decolab/errors.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace decolab::rates {

void ScatteringEnvironment::validate() const {
    if (!(wave_number > 0.0 && flux > 0.0 && sigma_eff > 0.0)) {
        throw ValidationError("scattering environment parameters must be positive");
    }
}

double localization_rate(const ScatteringEnvironment& env) {
    env.validate();
    return env.wave_number * env.wave_number * env.flux * env.sigma_eff;
}

OffdiagRate offdiag_decay_rate(double collision_rate, Complex overlap) {
    if (std::abs(overlap) > 1.0 + 1e-12) {
        throw InvalidOverlap("S-matrix overlap magnitude exceeds 1");
    }
    return OffdiagRate{collision_rate * (1.0 - overlap.real()),
                       collision_rate * overlap.imag()};
}

void apply_spatial_decoherence_inplace(DensityMatrix& rho, double lambda, double t) {
    if (!rho.spatial()) {
        throw DimensionMismatch("spatial decoherence needs a grid-based density matrix");
    }
    const double lt = lambda * t;
    if (!(lt >= 0.0)) {
        throw ValidationError("spatial decoherence requires Lambda*t >= 0");
    }
    if (lt == 0.0) return;
    const int n = static_cast<int>(rho.dim());
    const double h = rho.grid->spacing();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double xi = (i - j) * h;
            rho.elements(i, j) *= std::exp(-lt * xi * xi);
        }
    }
}

DensityMatrix apply_spatial_decoherence(const DensityMatrix& rho, double lambda,
                                        double t) {
    DensityMatrix out = rho;
    apply_spatial_decoherence_inplace(out, lambda, t);
    return out;
}

void QedScenario::validate() const {
    if (!(mass > 0.0 && volume > 0.0 && field >= 0.0 && time >= 0.0 && charge > 0.0)) {
        throw ValidationError("QED scenario requires m,V,e > 0 and E,t >= 0");
    }
}

double log_qed_vacuum_factor(const QedScenario& s) {
    s.validate();
    const double eE = s.charge * s.field;
    const double pi2 = M_PI * M_PI;
    const double first =
        s.volume * s.time / (256.0 * pi2) * eE * eE * eE /
        (s.mass * s.mass + eE * s.time * eE * s.time);
    const double second = s.volume * eE * eE / (256.0 * pi2 * s.mass) *
                          std::atan(eE * s.time / s.mass);
    return -(first + second);
}

double qed_vacuum_factor(const QedScenario& s) {
    return std::exp(log_qed_vacuum_factor(s));
}

double qed_vacuum_factor_limit(const QedScenario& s) {
    s.validate();
    const double eE = s.charge * s.field;
    return std::exp(-s.volume * eE * eE / (512.0 * M_PI * s.mass));
}

double log_qed_pair_factor(const QedScenario& s) {
    s.validate();
    if (s.field == 0.0) return 0.0;
    const double eE = s.charge * s.field;
    return -s.volume * s.time * eE * eE / (4.0 * M_PI * M_PI) *
           std::exp(-M_PI * s.mass * s.mass / eE);
}

double qed_pair_factor(const QedScenario& s) {
    return std::exp(log_qed_pair_factor(s));
}

double qed_dominance_ratio(const QedScenario& s) {
    s.validate();
    if (!(s.field > s.critical_field())) {
        throw RegimeError("dominance ratio is defined for E above the critical field");
    }
    if (!(s.time > 0.0)) {
        throw RegimeError("dominance ratio requires t > 0");
    }
    return std::abs(log_qed_vacuum_factor(s)) / std::abs(log_qed_pair_factor(s));
}

void GravityScenario::validate() const {
    if (!(number_density > 0.0 && particle_mass > 0.0 && temperature > 0.0 &&
          box_size > 0.0 && elapsed_time > 0.0)) {
        throw ValidationError("gravity scenario parameters must be positive");
    }
}

double gravity_rate(const GravityScenario& s) {
    s.validate();
    const double l4 = std::pow(s.box_size, 4);
    const double arg = M_PI * s.particle_mass / (2.0 * cgs::kBoltz * s.temperature);
    return s.number_density * l4 * std::pow(arg, 1.5);
}

double gravity_coherence_width(const GravityScenario& s, double g_ref) {
    const double gt = gravity_rate(s) * s.elapsed_time;
    if (gt <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (g_ref * std::sqrt(gt));
}

std::vector<Table1Preset> load_table1_presets(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot open preset file: " + file.string());
    }
    std::vector<Table1Preset> presets;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        Table1Preset p;
        if (!(ss >> p.environment >> p.size_cm >> p.wave_number >> p.flux >>
              p.sigma_eff >> p.regime >> p.paper_log10)) {
            throw ParseError("preset file " + file.string() + ": malformed record at line " +
                             std::to_string(lineno));
        }
        if (p.regime != "geometric" && p.regime != "long_wavelength") {
            throw ParseError("preset file " + file.string() + ": unknown regime at line " +
                             std::to_string(lineno));
        }
        presets.push_back(std::move(p));
    }
    return presets;
}

std::vector<Table1Row> table1_generate(const std::vector<Table1Preset>& presets) {
    std::vector<Table1Row> rows;
    rows.reserve(presets.size());
    for (const auto& p : presets) {
        ScatteringEnvironment env{p.wave_number, p.flux, p.sigma_eff, 1.0, p.environment};
        const double lambda = localization_rate(env);
        rows.push_back(Table1Row{p, lambda, std::log10(lambda) - p.paper_log10});
    }
    return rows;
}

} // namespace decolab::rates
