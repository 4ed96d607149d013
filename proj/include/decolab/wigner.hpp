// wigner.hpp — Phase-space representation of spatial density matrices and
// harmonic-oscillator eigenstates.

#pragma once

#include "decolab/density.hpp"
#include "decolab/grid.hpp"
#include "decolab/types.hpp"
#include "decolab/wavefunction.hpp"

namespace decolab::wigner {

struct WignerFunction {
    SpatialGrid xgrid;
    RVec p;       // ascending momentum grid, spacing pi/(n*spacing)
    RMat values;  // values(i, k) = W(x_i, p_k)

    double dp() const { return p[1] - p[0]; }
    // sum W dx dp
    double total() const;
};

// W(x,p) = (1/pi) Integral dy e^{2ipy} rho(x-y, x+y), evaluated on the
// stride-2 exact pairing of the grid; the imaginary residue is checked
// against tolerance and discarded.
WignerFunction wigner_transform(const DensityMatrix& rho);

// sum_p W dp; equals diag(rho) up to transform round-off.
RVec marginal_position(const WignerFunction& w);
// sum_x W dx per momentum point.
RVec marginal_momentum(const WignerFunction& w);

double variance_x(const WignerFunction& w);
double variance_p(const WignerFunction& w);

// Normalised Hermite-function eigenstate of the oscillator with frequency
// omega (unit mass), built by the stable three-term recurrence.
WaveFunction oscillator_eigenstate(const SpatialGrid& grid, int n, double omega);

struct OscillatorDemo {
    DensityMatrix rho;
    WignerFunction w;
};

// Eigenstate density matrix with off-diagonal damping exp(-lambda_t (x-x')^2)
// applied, plus its phase-space picture.
OscillatorDemo decohered_oscillator_demo(const SpatialGrid& grid, int n,
                                         double lambda_t, double omega = 1.0);

} // namespace decolab::wigner
