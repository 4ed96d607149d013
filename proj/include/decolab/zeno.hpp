// zeno.hpp — Survival probabilities under repeated projection, the
// continuously-monitored two-level system with a pointer, and the
// tunneling-versus-dephasing two-level model.

#pragma once

#include "decolab/density.hpp"
#include "decolab/grid.hpp"
#include "decolab/types.hpp"
#include "decolab/wavefunction.hpp"

#include <utility>
#include <vector>

namespace decolab::zeno {

// ---------------------------------------------------------------- analytics

struct DecaySystem {
    CMat hamiltonian;
    CVec undecayed;

    void validate() const;  // Hermitian H, unit initial vector
};

// P(t) = |<u| e^{-iHt} |u>|^2 via the eigendecomposition of H.
double survival_probability(const DecaySystem& sys, double t);

// <u|H^2|u> - <u|H|u>^2
double energy_variance(const DecaySystem& sys);

// P_N(t) = [P(t/N)]^N — projection onto |u> after each of N intervals.
double repeated_measurement_survival(const DecaySystem& sys, double t, int n);

// exp(-Gamma t), independent of how often one looks.
double classical_decay_survival(double decay_rate, double t, int n);

// ------------------------------------------------------------ pointer model

struct PointerModel {
    double transition = 1.0;    // V
    double level_offset = 0.0;  // E
    double coupling = 0.0;      // gamma
    SpatialGrid grid;
    double pointer_width = 1.0;  // initial Gaussian width of the meter

    void validate() const;
};

struct PointerPlan {
    double dt = 1e-3;
    int n_steps = 0;
    int record_every = 1;
};

struct PointerPoint {
    double t = 0.0;
    double p2 = 0.0;          // occupation of |2>
    double norm_error = 0.0;  // |total probability - 1|
};

struct PointerSeries {
    std::vector<PointerPoint> points;
    bool truncated = false;  // pointer reached the grid edge
};

// Joint (two-level ⊗ pointer) split-step evolution; the meter carries no
// kinetic term, so the coupling acts as opposite drifts of the two branches.
PointerSeries evolve_pointer_model(const PointerModel& m, const PointerPlan& plan);

// Time after which the two meter branches are resolved,
// |<ptr_1|ptr_2>| < e^{-1/2}; delimits the linear-growth window.
double pointer_resolution_time(const PointerModel& m);

// P2 at a fixed time for each coupling in `couplings` (shared plan).
std::vector<std::pair<double, double>> coupling_scan(const PointerModel& m,
                                                     double t_fixed,
                                                     const std::vector<double>& couplings,
                                                     double dt = 1e-3);

// ------------------------------------------------------------- chiral model

struct ChiralModel {
    double splitting = 1.0;        // Delta = E2 - E1
    double monitoring_rate = 0.0;  // dephasing of the handedness basis

    void validate() const;
};

// Handed superpositions of the two lowest eigenstates, in the energy basis.
struct ChiralStates {
    CVec left;
    CVec right;
};
ChiralStates chiral_states();

// Closed-form evolution: coherent tunneling at frequency Delta plus
// exponential damping of the handedness coherences.
DensityMatrix evolve_chiral(const ChiralModel& m, const DensityMatrix& rho0, double t);

double left_population(const DensityMatrix& rho);

} // namespace decolab::zeno
