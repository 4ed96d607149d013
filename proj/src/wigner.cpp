#include "decolab/wigner.hpp"

#include "decolab/errors.hpp"
#include "decolab/fourier.hpp"
#include "decolab/rates.hpp"

#include <cmath>

namespace decolab::wigner {

double WignerFunction::total() const {
    return values.sum() * xgrid.spacing() * dp();
}

WignerFunction wigner_transform(const DensityMatrix& rho) {
    if (!rho.spatial()) {
        throw DimensionMismatch("wigner transform needs a spatial density matrix");
    }
    if (rho.hermiticity_residue() > tol::kWignerResidue) {
        throw NonHermitianInput("wigner transform input violates hermiticity tolerance");
    }
    const SpatialGrid& grid = *rho.grid;
    const int n = grid.n_points;
    const double h = grid.spacing();

    WignerFunction w;
    w.xgrid = grid;
    w.p.resize(n);
    const double dp = M_PI / (n * h);
    for (int k = 0; k < n; ++k) w.p[k] = dp * (k - n / 2);
    w.values.resize(n, n);

    double residue = 0.0;
    CVec slice(n), row(n);
    for (int i = 0; i < n; ++i) {
        slice.setZero();
        const int reach = std::min(i, n - 1 - i);
        for (int j = -reach; j <= reach; ++j) {
            slice[(j + n) % n] = rho.elements(i - j, i + j);
        }
        // (h/pi) sum_j rho(x_i - jh, x_i + jh) e^{+2 pi i j k / n}
        ifft_inplace(slice);
        row = slice * double(n) * (h / M_PI);
        for (int k = 0; k < n; ++k) {
            const Complex v = row[(k + n / 2) % n];  // shift to ascending p
            residue = std::max(residue, std::abs(v.imag()));
            w.values(i, k) = v.real();
        }
    }
    if (residue > tol::kWignerResidue) {
        throw NonHermitianInput("wigner transform left an imaginary residue of " +
                                std::to_string(residue));
    }
    return w;
}

RVec marginal_position(const WignerFunction& w) {
    return w.values.rowwise().sum() * w.dp();
}

RVec marginal_momentum(const WignerFunction& w) {
    return w.values.colwise().sum().transpose() * w.xgrid.spacing();
}

double variance_x(const WignerFunction& w) {
    const RVec m = marginal_position(w);
    const RVec x = w.xgrid.points();
    const double total = m.sum();
    const double mean = (m.array() * x.array()).sum() / total;
    return (m.array() * (x.array() - mean).square()).sum() / total;
}

double variance_p(const WignerFunction& w) {
    const RVec m = marginal_momentum(w);
    const double total = m.sum();
    const double mean = (m.array() * w.p.array()).sum() / total;
    return (m.array() * (w.p.array() - mean).square()).sum() / total;
}

WaveFunction oscillator_eigenstate(const SpatialGrid& grid, int n, double omega) {
    if (n < 0) throw ValidationError("oscillator index must be non-negative");
    if (!(omega > 0.0)) throw ValidationError("oscillator frequency must be positive");
    const int npts = grid.n_points;
    const double s = std::sqrt(omega);  // unit mass

    // phi_0 = (omega/pi)^{1/4} e^{-omega x^2/2}; recurrence
    // phi_n = sqrt(2/n) u phi_{n-1} - sqrt((n-1)/n) phi_{n-2}, u = sqrt(omega) x.
    CVec amp(npts);
    RVec prev2(npts), prev1(npts), cur(npts);
    for (int i = 0; i < npts; ++i) {
        const double u = s * grid.point(i);
        prev1[i] = std::pow(omega / M_PI, 0.25) * std::exp(-u * u / 2.0);
        prev2[i] = 0.0;
    }
    for (int m = 1; m <= n; ++m) {
        for (int i = 0; i < npts; ++i) {
            const double u = s * grid.point(i);
            cur[i] = std::sqrt(2.0 / m) * u * prev1[i] -
                     std::sqrt((m - 1.0) / m) * prev2[i];
        }
        prev2.swap(prev1);
        prev1.swap(cur);
    }
    const double peak = prev1.cwiseAbs().maxCoeff();
    const double edge = std::max(std::abs(prev1[0]), std::abs(prev1[npts - 1]));
    if (edge >= 1e-8 * peak) {
        throw GridTooNarrow("oscillator eigenstate reaches the grid boundary");
    }
    for (int i = 0; i < npts; ++i) amp[i] = prev1[i];
    amp /= std::sqrt(amp.squaredNorm() * grid.spacing());
    return WaveFunction{grid, std::move(amp)};
}

OscillatorDemo decohered_oscillator_demo(const SpatialGrid& grid, int n,
                                         double lambda_t, double omega) {
    const WaveFunction psi = oscillator_eigenstate(grid, n, omega);
    DensityMatrix rho = pure_density(psi);
    rates::apply_spatial_decoherence_inplace(rho, lambda_t, 1.0);
    return OscillatorDemo{rho, wigner_transform(rho)};
}

} // namespace decolab::wigner
