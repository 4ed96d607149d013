#include "decolab/master.hpp"

#include "decolab/errors.hpp"
#include "decolab/fourier.hpp"

#include <cmath>
#include <string>

namespace decolab::master {

namespace {

RMat separation_matrix(const SpatialGrid& grid) {
    const int n = grid.n_points;
    const double h = grid.spacing();
    RMat xi(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) xi(i, j) = (i - j) * h;
    return xi;
}

RMat decoherence_factor(const SpatialGrid& grid, double lambda_t) {
    const int n = grid.n_points;
    const double h = grid.spacing();
    RMat f(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double xi = (i - j) * h;
            f(i, j) = std::exp(-lambda_t * xi * xi);
        }
    }
    return f;
}

CVec kinetic_phase(const SpatialGrid& grid, double mass, double dt) {
    const RVec k = grid.fft_wavenumbers();
    CVec phase(k.size());
    for (Eigen::Index j = 0; j < k.size(); ++j) {
        phase[j] = std::exp(Complex(0.0, -k[j] * k[j] * dt / (2.0 * mass)));
    }
    return phase;
}

void check_trace(const DensityMatrix& rho) {
    const double drift = std::abs(rho.trace_real() - 1.0);
    if (drift > tol::kTraceDriftStep) {
        throw TraceDrift("integrator step drifted the trace by " + std::to_string(drift));
    }
}

// Centered first derivative along the first index, zero boundary rows.
CMat d_first_index(const CMat& m, double h) {
    const Eigen::Index n = m.rows();
    CMat out = CMat::Zero(n, n);
    out.middleRows(1, n - 2) =
        (m.bottomRows(n - 2) - m.topRows(n - 2)) / (2.0 * h);
    return out;
}

CMat d_second_index(const CMat& m, double h) {
    const Eigen::Index n = m.cols();
    CMat out = CMat::Zero(n, n);
    out.middleCols(1, n - 2) =
        (m.rightCols(n - 2) - m.leftCols(n - 2)) / (2.0 * h);
    return out;
}

CMat d2_first_index(const CMat& m, double h) {
    const Eigen::Index n = m.rows();
    CMat out = CMat::Zero(n, n);
    out.middleRows(1, n - 2) = (m.bottomRows(n - 2) - 2.0 * m.middleRows(1, n - 2) +
                                m.topRows(n - 2)) /
                               (h * h);
    return out;
}

CMat d2_second_index(const CMat& m, double h) {
    const Eigen::Index n = m.cols();
    CMat out = CMat::Zero(n, n);
    out.middleCols(1, n - 2) = (m.rightCols(n - 2) - 2.0 * m.middleCols(1, n - 2) +
                                m.leftCols(n - 2)) /
                               (h * h);
    return out;
}

} // namespace

void FreeDecoherenceModel::validate() const {
    if (!(mass > 0.0) || lambda < 0.0) {
        throw ValidationError("free decoherence model requires m > 0 and Lambda >= 0");
    }
}

void CaldeiraLeggettModel::validate() const {
    if (!(mass > 0.0) || damping < 0.0 || temperature < 0.0) {
        throw ValidationError("damped model requires m > 0, gamma >= 0, T >= 0");
    }
}

void IntegrationPlan::validate() const {
    if (!(dt > 0.0) || n_steps <= 0 || record_every <= 0) {
        throw ValidationError("integration plan requires dt > 0 and positive counts");
    }
}

void apply_kinetic_evolution(DensityMatrix& rho, double mass, double dt) {
    if (!rho.spatial()) {
        throw DimensionMismatch("kinetic evolution needs a spatial density matrix");
    }
    const CVec phase = kinetic_phase(*rho.grid, mass, dt);
    unitary_conjugate_fft(rho.elements, phase);
}

FreeDecoherenceStepper::FreeDecoherenceStepper(const FreeDecoherenceModel& model,
                                               const SpatialGrid& grid, double dt) {
    model.validate();
    if (!(dt > 0.0)) throw ValidationError("stepper requires dt > 0");
    half_factor_ = decoherence_factor(grid, model.lambda * dt / 2.0);
    kinetic_phase_ = kinetic_phase(grid, model.mass, dt);
}

void FreeDecoherenceStepper::step(DensityMatrix& rho) const {
    rho.elements.array() *= half_factor_.array();
    unitary_conjugate_fft(rho.elements, kinetic_phase_);
    rho.elements.array() *= half_factor_.array();
    check_trace(rho);
}

CaldeiraLeggettStepper::CaldeiraLeggettStepper(const CaldeiraLeggettModel& model,
                                               const SpatialGrid& grid, double dt)
    : damping_(model.damping), dt_(dt), spacing_(grid.spacing()) {
    model.validate();
    if (!(dt > 0.0)) throw ValidationError("stepper requires dt > 0");
    xi_ = separation_matrix(grid);
    half_factor_ = decoherence_factor(grid, model.lambda() * dt / 2.0);
    kinetic_phase_ = kinetic_phase(grid, model.mass, dt);
    // rk4 stability for the friction stage on dt/2.
    const double op_bound = damping_ * grid.extent() * 2.0 / spacing_;
    if (op_bound * dt / 2.0 > 2.5) {
        throw StabilityViolation("friction stage unstable: reduce dt below " +
                                 std::to_string(5.0 / op_bound));
    }
}

void CaldeiraLeggettStepper::friction_half(DensityMatrix& rho) const {
    const double tau = dt_ / 2.0;
    auto rhs = [&](const CMat& m) -> CMat {
        return damping_ *
               xi_.array() *
               (d_second_index(m, spacing_) - d_first_index(m, spacing_)).array();
    };
    const CMat k1 = rhs(rho.elements);
    const CMat k2 = rhs(rho.elements + (tau / 2.0) * k1);
    const CMat k3 = rhs(rho.elements + (tau / 2.0) * k2);
    const CMat k4 = rhs(rho.elements + tau * k3);
    rho.elements += (tau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void CaldeiraLeggettStepper::step(DensityMatrix& rho) const {
    friction_half(rho);
    rho.elements.array() *= half_factor_.array();
    unitary_conjugate_fft(rho.elements, kinetic_phase_);
    rho.elements.array() *= half_factor_.array();
    friction_half(rho);
    check_trace(rho);
}

void step_free_decoherence(DensityMatrix& rho, const FreeDecoherenceModel& model,
                           double dt) {
    FreeDecoherenceStepper(model, *rho.grid, dt).step(rho);
}

void step_caldeira_leggett(DensityMatrix& rho, const CaldeiraLeggettModel& model,
                           double dt) {
    CaldeiraLeggettStepper(model, *rho.grid, dt).step(rho);
}

void step_free_decoherence_rk4(DensityMatrix& rho, const FreeDecoherenceModel& model,
                               double dt) {
    model.validate();
    if (!rho.spatial()) {
        throw DimensionMismatch("rk4 step needs a spatial density matrix");
    }
    const SpatialGrid& grid = *rho.grid;
    const double h = grid.spacing();
    if (dt > 0.5 * model.mass * h * h) {
        throw StabilityViolation("rk4 kinetic term unstable: dt must not exceed "
                                 "0.5*m*spacing^2 = " +
                                 std::to_string(0.5 * model.mass * h * h));
    }
    const RMat xi2 = separation_matrix(grid).array().square();
    const Complex i_over_2m(0.0, 1.0 / (2.0 * model.mass));
    auto rhs = [&](const CMat& m) -> CMat {
        CMat out = i_over_2m * (d2_first_index(m, h) - d2_second_index(m, h));
        out.array() -= model.lambda * xi2.array() * m.array();
        return out;
    };
    const CMat k1 = rhs(rho.elements);
    const CMat k2 = rhs(rho.elements + (dt / 2.0) * k1);
    const CMat k3 = rhs(rho.elements + (dt / 2.0) * k2);
    const CMat k4 = rhs(rho.elements + dt * k3);
    rho.elements += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_trace(rho);
}

namespace {

// Relative probability mass near the hard boundary; above this the grid no
// longer contains the state and the run is cut short.
constexpr double kLeakDensity = 1e-10;

bool leaking(const DensityMatrix& rho) {
    const RVec d = position_distribution(rho);
    const double peak = d.maxCoeff();
    const Eigen::Index n = d.size();
    const double edge = std::max(std::max(d[0], d[1]), std::max(d[n - 2], d[n - 1]));
    return edge > kLeakDensity * peak;
}

template <typename StepFn>
CoherenceSeries run_series(const StepFn& advance, const WaveFunction& psi0,
                           const IntegrationPlan& plan) {
    DensityMatrix rho = pure_density(psi0);
    CoherenceSeries series;
    series.points.push_back(
        SeriesPoint{0.0, coherence_length(rho), std::abs(rho.trace_real() - 1.0),
                    purity(rho)});
    for (int s = 1; s <= plan.n_steps; ++s) {
        advance(rho);
        if (s % plan.record_every != 0 && s != plan.n_steps) continue;
        if (leaking(rho)) {
            series.truncated = true;
            break;
        }
        series.points.push_back(SeriesPoint{s * plan.dt, coherence_length(rho),
                                            std::abs(rho.trace_real() - 1.0),
                                            purity(rho)});
    }
    series.final_hermiticity_residue = rho.hermiticity_residue();
    return series;
}

} // namespace

CoherenceSeries coherence_length_series(const FreeDecoherenceModel& model,
                                        const WaveFunction& psi0,
                                        const IntegrationPlan& plan) {
    plan.validate();
    if (plan.scheme == Scheme::rk4) {
        // cross-check path
        return run_series(
            [&](DensityMatrix& rho) { step_free_decoherence_rk4(rho, model, plan.dt); },
            psi0, plan);
    }
    const FreeDecoherenceStepper stepper(model, psi0.grid, plan.dt);
    return run_series([&](DensityMatrix& rho) { stepper.step(rho); }, psi0, plan);
}

CoherenceSeries coherence_length_series(const CaldeiraLeggettModel& model,
                                        const WaveFunction& psi0,
                                        const IntegrationPlan& plan) {
    plan.validate();
    const CaldeiraLeggettStepper stepper(model, psi0.grid, plan.dt);
    return run_series([&](DensityMatrix& rho) { stepper.step(rho); }, psi0, plan);
}

double decoherence_relaxation_ratio(double mass_g, double temperature_K,
                                    double dx_cm) {
    if (!(mass_g > 0.0 && temperature_K > 0.0 && dx_cm > 0.0)) {
        throw ValidationError("ratio requires positive mass, temperature, separation");
    }
    return mass_g * cgs::kBoltz * temperature_K * dx_cm * dx_cm /
           (cgs::kHbar * cgs::kHbar);
}

double thermal_de_broglie_wavelength(double mass_g, double temperature_K) {
    return cgs::kHbar / std::sqrt(mass_g * cgs::kBoltz * temperature_K);
}

} // namespace decolab::master
