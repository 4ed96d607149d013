// wavefunction.hpp — Normalised wave packets on a SpatialGrid.

#pragma once

#include "decolab/grid.hpp"
#include "decolab/types.hpp"

namespace decolab {

struct WaveFunction {
    SpatialGrid grid;
    CVec amplitudes;

    // sum |psi_i|^2 * spacing
    double norm_squared() const;
    RVec probability_density() const;
};

// psi(x) ~ exp(-(x-center)^2/(4 width^2) + i momentum x), normalised.
// `width` is the rms position spread of |psi|^2.
WaveFunction build_gaussian_packet(const SpatialGrid& grid, double center,
                                   double width, double momentum);

// Normalised c1*a + c2*b.
WaveFunction superpose(const WaveFunction& a, const WaveFunction& b,
                       Complex c1, Complex c2);

Complex inner_product(const WaveFunction& a, const WaveFunction& b);

double position_mean(const WaveFunction& psi);
double position_variance(const WaveFunction& psi);

// Momentum moments through the DFT of the amplitudes.
double momentum_mean(const WaveFunction& psi);

} // namespace decolab
