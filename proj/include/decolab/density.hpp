// density.hpp — Density matrices over a spatial grid or a small discrete
// basis, plus the generic measurement-entanglement map.

#pragma once

#include "decolab/grid.hpp"
#include "decolab/types.hpp"
#include "decolab/wavefunction.hpp"

#include <optional>

namespace decolab {

struct DensityMatrix {
    CMat elements;
    std::optional<SpatialGrid> grid;  // absent for a discrete basis

    Eigen::Index dim() const { return elements.rows(); }
    bool spatial() const { return grid.has_value(); }
    // Integration weight: spacing on a grid, 1 for a discrete basis.
    double weight() const { return grid ? grid->spacing() : 1.0; }

    double trace_real() const { return elements.trace().real() * weight(); }
    double hermiticity_residue() const;

    // Hermiticity, unit trace, diagonal positivity. Throws on violation.
    void validate() const;
};

DensityMatrix pure_density(const WaveFunction& psi);
DensityMatrix discrete_density(CMat elements);
DensityMatrix pure_discrete_density(const CVec& state);

// Tr(rho^2) * weight^2; equals 1 for a pure state.
double purity(const DensityMatrix& rho);

// diag(rho); sums to 1/weight.
RVec position_distribution(const DensityMatrix& rho);

// Momentum-representation diagonal (DFT storage order), normalised to 1.
RVec momentum_distribution(const DensityMatrix& rho);
double momentum_mean(const DensityMatrix& rho);

struct EnvironmentOverlapMatrix {
    CMat overlaps;
    void validate() const;  // unit diagonal, |entries| <= 1, Hermitian
};

// rho'_{mn} = rho_{mn} <Phi_m|Phi_n>; diagonal untouched.
DensityMatrix ideal_measurement_entangle(const DensityMatrix& rho,
                                         const EnvironmentOverlapMatrix& overlaps);

// Density-weighted rms spread of |rho| transverse to the diagonal, scaled so a
// pure Gaussian packet of width sigma gives 2*sigma. Floors at the grid
// spacing when the state carries no off-diagonal support.
double coherence_length(const DensityMatrix& rho);

} // namespace decolab
