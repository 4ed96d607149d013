// grid.hpp — Uniform 1-D position grid. Sizes are powers of two so the
// discrete Fourier transform pairs exactly with the grid.

#pragma once

#include "decolab/types.hpp"

namespace decolab {

enum class UnitSystem { natural, cgs };

struct SpatialGrid {
    int n_points = 0;
    double x_min = 0.0;
    double x_max = 0.0;
    UnitSystem units = UnitSystem::natural;

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    double point(int i) const { return x_min + spacing() * i; }
    double extent() const { return x_max - x_min; }

    RVec points() const;

    // Wavenumbers in DFT storage order, for the periodic length n*spacing.
    RVec fft_wavenumbers() const;

    bool operator==(const SpatialGrid&) const = default;
};

// Validating constructor: n >= 8 and a power of two, x_max > x_min.
SpatialGrid make_grid(int n_points, double x_min, double x_max,
                      UnitSystem units = UnitSystem::natural);

} // namespace decolab
