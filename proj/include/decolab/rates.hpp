// rates.hpp — Closed-form decoherence rates and factors: scattering damping,
// spatial localisation, field-theory factors, gravitational monitoring.

#pragma once

#include "decolab/density.hpp"
#include "decolab/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace decolab::rates {

// ---------------------------------------------------------------- scattering

struct ScatteringEnvironment {
    double wave_number = 0.0;     // cm^-1 of the incoming particles
    double flux = 0.0;            // cm^-2 s^-1
    double sigma_eff = 0.0;       // cm^2
    double collision_rate = 0.0;  // s^-1
    std::string label;

    void validate() const;
};

// Lambda = k^2 * flux * sigma_eff
double localization_rate(const ScatteringEnvironment& env);

// Off-diagonal damping from a collision rate and an S-matrix overlap.
// The magnitude decays at `decay` = Gamma*(1 - Re overlap); the imaginary
// part shows up as a phase drift and is reported separately.
struct OffdiagRate {
    double decay = 0.0;
    double phase = 0.0;
};
OffdiagRate offdiag_decay_rate(double collision_rate, Complex overlap);

// rho(x,x') *= exp(-Lambda t (x-x')^2); diagonal bit-identical.
DensityMatrix apply_spatial_decoherence(const DensityMatrix& rho, double lambda,
                                        double t);
void apply_spatial_decoherence_inplace(DensityMatrix& rho, double lambda, double t);

// ----------------------------------------------------------------- QED field

// Natural units (hbar = c = 1) throughout.
struct QedScenario {
    double charge = 1.0;  // e
    double mass = 1.0;    // m of the charged field
    double field = 0.0;   // E
    double volume = 1.0;  // V
    double time = 0.0;    // t

    void validate() const;
    double critical_field() const { return mass * mass / charge; }
};

// log D_V = -( Vt/(256 pi^2) (eE)^3/(m^2+(eEt)^2)
//             + V(eE)^2/(256 pi^2 m) arctan(eEt/m) )
double log_qed_vacuum_factor(const QedScenario& s);
double qed_vacuum_factor(const QedScenario& s);
// t >> m/eE limit: exp(-V e^2 E^2 / (512 pi m))
double qed_vacuum_factor_limit(const QedScenario& s);

// log D_PC = -V t e^2 E^2/(4 pi^2) * exp(-pi m^2/(eE))
double log_qed_pair_factor(const QedScenario& s);
double qed_pair_factor(const QedScenario& s);

// |ln D_V| / |ln D_PC| in the strong-field regime E > E_c; RegimeError below.
double qed_dominance_ratio(const QedScenario& s);

// ------------------------------------------------------------------- gravity

// CGS inputs; the rate formula is evaluated numerically as printed.
struct GravityScenario {
    double number_density = 0.0;  // cm^-3
    double particle_mass = 0.0;   // g
    double temperature = 0.0;     // K
    double box_size = 0.0;        // cm
    double elapsed_time = 0.0;    // s

    void validate() const;
};

// Gamma = n L^4 (pi m / (2 k_B T))^{3/2}
double gravity_rate(const GravityScenario& s);

// Delta g / g = 1/(g_ref sqrt(Gamma t)); +inf when Gamma*t vanishes.
double gravity_coherence_width(const GravityScenario& s,
                               double g_ref = cgs::kGravityAccel);

// ------------------------------------------------------------------- table 1

struct Table1Preset {
    std::string environment;
    double size_cm = 0.0;
    double wave_number = 0.0;
    double flux = 0.0;
    double sigma_eff = 0.0;
    std::string regime;  // "geometric" or "long_wavelength"
    double paper_log10 = 0.0;
};

struct Table1Row {
    Table1Preset preset;
    double lambda = 0.0;
    double log10_deviation = 0.0;
};

std::vector<Table1Preset> load_table1_presets(const std::filesystem::path& file);
std::vector<Table1Row> table1_generate(const std::vector<Table1Preset>& presets);

} // namespace decolab::rates
