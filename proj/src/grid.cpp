#include "decolab/grid.hpp"

#include "decolab/errors.hpp"

#include <cmath>
#include <string>

namespace decolab {

RVec SpatialGrid::points() const {
    RVec x(n_points);
    const double h = spacing();
    for (int i = 0; i < n_points; ++i) x[i] = x_min + h * i;
    return x;
}

RVec SpatialGrid::fft_wavenumbers() const {
    const int n = n_points;
    const double dk = 2.0 * M_PI / (n * spacing());
    RVec k(n);
    for (int j = 0; j < n; ++j) {
        const int m = (j <= n / 2 - 1) ? j : j - n;
        k[j] = dk * m;
    }
    return k;
}

SpatialGrid make_grid(int n_points, double x_min, double x_max, UnitSystem units) {
    if (n_points < 8 || (n_points & (n_points - 1)) != 0) {
        throw ValidationError("grid: n_points must be >= 8 and a power of two, got " +
                              std::to_string(n_points));
    }
    if (!(x_max > x_min)) {
        throw ValidationError("grid: x_max must exceed x_min");
    }
    return SpatialGrid{n_points, x_min, x_max, units};
}

} // namespace decolab
