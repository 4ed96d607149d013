#include "decolab/zeno.hpp"

#include "decolab/errors.hpp"
#include "decolab/fourier.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace decolab::zeno {

void DecaySystem::validate() const {
    if (hamiltonian.rows() != hamiltonian.cols() ||
        hamiltonian.rows() != undecayed.size()) {
        throw DimensionMismatch("decay system dimensions do not match");
    }
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw NonHermitianInput("decay system Hamiltonian must be Hermitian");
    }
    if (std::abs(undecayed.norm() - 1.0) > 1e-12) {
        throw ValidationError("undecayed state must be a unit vector");
    }
}

double survival_probability(const DecaySystem& sys, double t) {
    sys.validate();
    if (t < 0.0) throw ValidationError("survival probability requires t >= 0");
    Eigen::SelfAdjointEigenSolver<CMat> es(sys.hamiltonian);
    const CVec proj = es.eigenvectors().adjoint() * sys.undecayed;
    Complex amp(0.0, 0.0);
    for (Eigen::Index k = 0; k < proj.size(); ++k) {
        amp += std::norm(proj[k]) * std::exp(Complex(0.0, -es.eigenvalues()[k] * t));
    }
    return std::norm(amp);
}

double energy_variance(const DecaySystem& sys) {
    sys.validate();
    const CVec hu = sys.hamiltonian * sys.undecayed;
    const double h2 = hu.squaredNorm();
    const double h1 = sys.undecayed.dot(hu).real();
    return h2 - h1 * h1;
}

double repeated_measurement_survival(const DecaySystem& sys, double t, int n) {
    if (n < 1) throw ValidationError("measurement count must be at least 1");
    return std::pow(survival_probability(sys, t / n), n);
}

double classical_decay_survival(double decay_rate, double t, int n) {
    if (decay_rate < 0.0) throw ValidationError("decay rate must be non-negative");
    if (n < 1) throw ValidationError("measurement count must be at least 1");
    return std::exp(-decay_rate * t);  // watched or not
}

void PointerModel::validate() const {
    if (transition < 0.0 || coupling < 0.0) {
        throw ValidationError("pointer model requires V >= 0 and gamma >= 0");
    }
    if (!(pointer_width > 2.0 * grid.spacing())) {
        throw GridTooCoarse("pointer width must exceed 2*spacing");
    }
}

PointerSeries evolve_pointer_model(const PointerModel& m, const PointerPlan& plan) {
    m.validate();
    if (!(plan.dt > 0.0) || plan.n_steps <= 0 || plan.record_every <= 0) {
        throw ValidationError("pointer plan requires dt > 0 and positive counts");
    }
    const int n = m.grid.n_points;
    const double h = m.grid.spacing();

    CVec psi1(n), psi2 = CVec::Zero(n);
    for (int i = 0; i < n; ++i) {
        const double x = m.grid.point(i);
        psi1[i] = std::exp(-x * x / (4.0 * m.pointer_width * m.pointer_width));
    }
    psi1 /= std::sqrt(psi1.squaredNorm() * h);

    // exp(-i M dt) for the local two-level mixing M = [[0,V],[V,E]].
    Eigen::Matrix2cd M;
    M << 0.0, m.transition, m.transition, m.level_offset;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(M);
    Eigen::Vector2cd ph;
    ph << std::exp(Complex(0.0, -es.eigenvalues()[0] * plan.dt)),
          std::exp(Complex(0.0, -es.eigenvalues()[1] * plan.dt));
    const Eigen::Matrix2cd G =
        es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();

    // Half-step drifts of the meter, opposite for the two branches.
    const RVec k = m.grid.fft_wavenumbers();
    CVec drift1(n), drift2(n);
    for (int j = 0; j < n; ++j) {
        drift1[j] = std::exp(Complex(0.0, -m.coupling * k[j] * plan.dt / 2.0));
        drift2[j] = std::conj(drift1[j]);
    }
    auto translate = [&](CVec& psi, const CVec& drift) {
        fft_inplace(psi);
        psi.array() *= drift.array();
        ifft_inplace(psi);
    };

    PointerSeries series;
    series.points.push_back(PointerPoint{0.0, 0.0, 0.0});
    for (int s = 1; s <= plan.n_steps; ++s) {
        translate(psi1, drift1);
        translate(psi2, drift2);
        for (int i = 0; i < n; ++i) {
            const Complex a = G(0, 0) * psi1[i] + G(0, 1) * psi2[i];
            const Complex b = G(1, 0) * psi1[i] + G(1, 1) * psi2[i];
            psi1[i] = a;
            psi2[i] = b;
        }
        translate(psi1, drift1);
        translate(psi2, drift2);
        if (s % plan.record_every == 0 || s == plan.n_steps) {
            const double edge =
                std::norm(psi1[0]) + std::norm(psi2[0]) + std::norm(psi1[n - 1]) +
                std::norm(psi2[n - 1]);
            const double peak =
                (psi1.array().abs2() + psi2.array().abs2()).maxCoeff();
            if (edge > 1e-10 * peak) {
                series.truncated = true;
                break;
            }
            const double total = (psi1.squaredNorm() + psi2.squaredNorm()) * h;
            series.points.push_back(
                PointerPoint{s * plan.dt, psi2.squaredNorm() * h,
                             std::abs(total - 1.0)});
        }
    }
    return series;
}

double pointer_resolution_time(const PointerModel& m) {
    if (!(m.coupling > 0.0)) {
        throw ValidationError("resolution time needs a positive coupling");
    }
    // branches drift apart at 2*gamma; overlap falls to e^{-1/2} at xi = 2w
    return m.pointer_width / m.coupling;
}

std::vector<std::pair<double, double>> coupling_scan(const PointerModel& m,
                                                     double t_fixed,
                                                     const std::vector<double>& couplings,
                                                     double dt) {
    if (!(t_fixed > 0.0)) throw ValidationError("scan time must be positive");
    PointerPlan plan;
    plan.n_steps = std::max(1, static_cast<int>(std::lround(t_fixed / dt)));
    plan.dt = t_fixed / plan.n_steps;
    plan.record_every = plan.n_steps;
    std::vector<std::pair<double, double>> out;
    out.reserve(couplings.size());
    for (double g : couplings) {
        PointerModel mg = m;
        mg.coupling = g;
        const PointerSeries s = evolve_pointer_model(mg, plan);
        if (s.truncated) {
            throw BoundaryLeak("coupling scan: meter reached the grid edge at gamma = " +
                               std::to_string(g));
        }
        out.emplace_back(g, s.points.back().p2);
    }
    return out;
}

void ChiralModel::validate() const {
    if (!(splitting > 0.0) || monitoring_rate < 0.0) {
        throw ValidationError("chiral model requires Delta > 0 and rate >= 0");
    }
}

ChiralStates chiral_states() {
    const double s = 1.0 / std::sqrt(2.0);
    CVec left(2), right(2);
    left << s, s;
    right << s, -s;
    return ChiralStates{left, right};
}

namespace {

// Basis-change matrix with the handed states as columns.
CMat handed_basis() {
    const ChiralStates st = chiral_states();
    CMat b(2, 2);
    b.col(0) = st.left;
    b.col(1) = st.right;
    return b;
}

} // namespace

DensityMatrix evolve_chiral(const ChiralModel& m, const DensityMatrix& rho0, double t) {
    m.validate();
    if (rho0.dim() != 2 || rho0.spatial()) {
        throw DimensionMismatch("chiral evolution needs a discrete 2x2 density matrix");
    }
    if (t < 0.0) throw ValidationError("chiral evolution requires t >= 0");

    const CMat b = handed_basis();
    const CMat rho_lr = b.adjoint() * rho0.elements * b;

    // Bloch components in the handed basis.
    double rx = 2.0 * rho_lr(0, 1).real();
    double ry = -2.0 * rho_lr(0, 1).imag();
    double rz = (rho_lr(0, 0) - rho_lr(1, 1)).real();

    const double lam = m.monitoring_rate;
    const double delta = m.splitting;

    // Tunneling rotates (ry, rz); monitoring damps rx, ry. The population
    // difference obeys rz'' + lam rz' + delta^2 rz = 0.
    const double rz0 = rz;
    const double rzdot0 = -delta * ry;
    const double disc = 0.25 * lam * lam - delta * delta;
    double rz_t, rzdot_t;
    if (disc > 0.0 && std::sqrt(disc) * t > 1e-4) {
        // overdamped: explicit decaying exponentials (the slow root computed
        // from the root product to avoid cancellation at strong monitoring)
        const double kappa = std::sqrt(disc);
        const double mu_slow = -delta * delta / (0.5 * lam + kappa);
        const double mu_fast = -0.5 * lam - kappa;
        const double a = (rzdot0 - mu_fast * rz0) / (mu_slow - mu_fast);
        const double b = rz0 - a;
        const double es = std::exp(mu_slow * t);
        const double ef = std::exp(mu_fast * t);
        rz_t = a * es + b * ef;
        rzdot_t = a * mu_slow * es + b * mu_fast * ef;
    } else {
        // damped rotation; near the critical point cos/sinc limit to 1 and t
        double c, sfun;
        if (disc < 0.0 && std::sqrt(-disc) * t > 1e-4) {
            const double omega = std::sqrt(-disc);
            c = std::cos(omega * t);
            sfun = std::sin(omega * t) / omega;
        } else {
            c = 1.0 + 0.5 * disc * t * t;
            sfun = t * (1.0 + disc * t * t / 6.0);
        }
        const double v0 = rzdot0 + 0.5 * lam * rz0;
        const double damp = std::exp(-0.5 * lam * t);
        const double u = rz0 * c + v0 * sfun;
        const double uprime = rz0 * disc * sfun + v0 * c;
        rz_t = damp * u;
        rzdot_t = damp * (uprime - 0.5 * lam * u);
    }
    rz = rz_t;
    ry = -rzdot_t / delta;
    rx *= std::exp(-lam * t);

    CMat out_lr(2, 2);
    out_lr(0, 0) = 0.5 * (1.0 + rz);
    out_lr(1, 1) = 0.5 * (1.0 - rz);
    out_lr(0, 1) = 0.5 * Complex(rx, -ry);
    out_lr(1, 0) = 0.5 * Complex(rx, ry);

    DensityMatrix out{b * out_lr * b.adjoint(), std::nullopt};
    out.validate();
    return out;
}

double left_population(const DensityMatrix& rho) {
    const CVec left = chiral_states().left;
    return (left.adjoint() * rho.elements * left)(0, 0).real();
}

} // namespace decolab::zeno
