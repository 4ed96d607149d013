#include "decolab/wavefunction.hpp"

#include "decolab/errors.hpp"
#include "decolab/fourier.hpp"

#include <cmath>

namespace decolab {

double WaveFunction::norm_squared() const {
    return amplitudes.squaredNorm() * grid.spacing();
}

RVec WaveFunction::probability_density() const {
    return amplitudes.array().abs2();
}

WaveFunction build_gaussian_packet(const SpatialGrid& grid, double center,
                                   double width, double momentum) {
    const double h = grid.spacing();
    if (!(width > 2.0 * h)) {
        throw GridTooCoarse("gaussian packet: width must exceed 2*spacing");
    }
    const int n = grid.n_points;
    CVec amp(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.point(i);
        const double d = x - center;
        amp[i] = std::exp(Complex(-d * d / (4.0 * width * width), momentum * x));
    }
    const double peak = amp.cwiseAbs().maxCoeff();
    const double edge = std::max(std::abs(amp[0]), std::abs(amp[n - 1]));
    if (edge >= tol::kBoundaryAmp * peak) {
        throw BoundaryLeak("gaussian packet: support reaches the grid boundary");
    }
    amp /= std::sqrt(amp.squaredNorm() * h);
    return WaveFunction{grid, std::move(amp)};
}

WaveFunction superpose(const WaveFunction& a, const WaveFunction& b,
                       Complex c1, Complex c2) {
    if (!(a.grid == b.grid)) {
        throw GridMismatch("superpose: operands live on different grids");
    }
    CVec amp = c1 * a.amplitudes + c2 * b.amplitudes;
    const double nrm = std::sqrt(amp.squaredNorm() * a.grid.spacing());
    if (nrm < tol::kZeroNorm) {
        throw ZeroNorm("superpose: combination has vanishing norm");
    }
    amp /= nrm;
    return WaveFunction{a.grid, std::move(amp)};
}

Complex inner_product(const WaveFunction& a, const WaveFunction& b) {
    if (!(a.grid == b.grid)) {
        throw GridMismatch("inner_product: operands live on different grids");
    }
    return a.amplitudes.dot(b.amplitudes) * a.grid.spacing();
}

double position_mean(const WaveFunction& psi) {
    const RVec p = psi.probability_density();
    const RVec x = psi.grid.points();
    return (p.array() * x.array()).sum() / p.sum();
}

double position_variance(const WaveFunction& psi) {
    const RVec p = psi.probability_density();
    const RVec x = psi.grid.points();
    const double mean = (p.array() * x.array()).sum() / p.sum();
    return (p.array() * (x.array() - mean).square()).sum() / p.sum();
}

double momentum_mean(const WaveFunction& psi) {
    CVec f = psi.amplitudes;
    fft_inplace(f);
    const RVec k = psi.grid.fft_wavenumbers();
    const RVec w = f.array().abs2();
    return (w.array() * k.array()).sum() / w.sum();
}

} // namespace decolab
