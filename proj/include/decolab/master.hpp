// master.hpp — Time integration of spatial master equations: free evolution
// with position-monitoring decoherence, and the damped (quantum Brownian
// motion) variant with a friction term.

#pragma once

#include "decolab/density.hpp"
#include "decolab/types.hpp"
#include "decolab/wavefunction.hpp"

#include <vector>

namespace decolab::master {

struct FreeDecoherenceModel {
    double mass = 1.0;
    double lambda = 0.0;  // decoherence strength, 1/(length^2 time)

    void validate() const;
};

struct CaldeiraLeggettModel {
    double mass = 1.0;
    double damping = 0.0;      // gamma, 1/time
    double temperature = 0.0;  // natural units, k_B = 1

    double lambda() const { return mass * damping * temperature; }
    void validate() const;
};

enum class Scheme { split_step, rk4 };

struct IntegrationPlan {
    double dt = 0.0;
    int n_steps = 0;
    int record_every = 1;
    Scheme scheme = Scheme::split_step;

    void validate() const;
};

// Exact kinetic propagation in the transform representation (unitary).
void apply_kinetic_evolution(DensityMatrix& rho, double mass, double dt);

// Cached-factor steppers. A Strang composition: half decoherence factor,
// exact kinetic propagation, half decoherence factor. The damped variant
// wraps that with half-interval friction stages integrated by one rk4 step
// each (centered differences); with damping = 0 those stages add exactly
// zero and the trajectory coincides bitwise with the free stepper.
class FreeDecoherenceStepper {
public:
    FreeDecoherenceStepper(const FreeDecoherenceModel& model, const SpatialGrid& grid,
                           double dt);
    void step(DensityMatrix& rho) const;

private:
    RMat half_factor_;
    CVec kinetic_phase_;
};

class CaldeiraLeggettStepper {
public:
    CaldeiraLeggettStepper(const CaldeiraLeggettModel& model, const SpatialGrid& grid,
                           double dt);
    void step(DensityMatrix& rho) const;

private:
    void friction_half(DensityMatrix& rho) const;

    double damping_;
    double dt_;
    double spacing_;
    RMat xi_;  // x - x'
    RMat half_factor_;
    CVec kinetic_phase_;
};

// Single steps built on the steppers above (convenience for one-off use).
void step_free_decoherence(DensityMatrix& rho, const FreeDecoherenceModel& model,
                           double dt);
void step_caldeira_leggett(DensityMatrix& rho, const CaldeiraLeggettModel& model,
                           double dt);

// rk4 cross-check path: centered finite differences for the kinetic term.
void step_free_decoherence_rk4(DensityMatrix& rho, const FreeDecoherenceModel& model,
                               double dt);

struct SeriesPoint {
    double t = 0.0;
    double coherence_length = 0.0;
    double trace_error = 0.0;
    double purity = 0.0;
};

struct CoherenceSeries {
    std::vector<SeriesPoint> points;
    bool truncated = false;  // boundary leak aborted the run; partial data
    double final_hermiticity_residue = 0.0;
};

CoherenceSeries coherence_length_series(const FreeDecoherenceModel& model,
                                        const WaveFunction& psi0,
                                        const IntegrationPlan& plan);
CoherenceSeries coherence_length_series(const CaldeiraLeggettModel& model,
                                        const WaveFunction& psi0,
                                        const IntegrationPlan& plan);

// m k_B T (dx)^2 / hbar^2 in CGS; the decoherence-to-relaxation comparison.
double decoherence_relaxation_ratio(double mass_g, double temperature_K,
                                    double dx_cm);

// hbar / sqrt(m k_B T) in CGS.
double thermal_de_broglie_wavelength(double mass_g, double temperature_K);

} // namespace decolab::master
