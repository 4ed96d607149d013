#include "decolab/errors.hpp"
#include "decolab/rates.hpp"
#include "decolab/wigner.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace decolab;
using namespace decolab::wigner;

namespace {

const double kCoherentWidth = 1.0 / std::sqrt(2.0);  // ground-state packet width

} // namespace

TEST_CASE("gaussian packet transforms to the rotation-symmetric bell") {
    const SpatialGrid g = make_grid(256, -10.0, 10.0);
    const DensityMatrix rho =
        pure_density(build_gaussian_packet(g, 0.0, kCoherentWidth, 0.0));
    const WignerFunction w = wigner_transform(rho);

    double max_err = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        for (int k = 0; k < g.n_points; ++k) {
            const double x = g.point(i);
            const double p = w.p[k];
            const double expected = std::exp(-x * x - p * p) / M_PI;
            max_err = std::max(max_err, std::abs(w.values(i, k) - expected));
        }
    }
    CHECK(max_err < 1e-6);
    CHECK(w.values.minCoeff() > -1e-9);
    CHECK(w.total() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cat state oscillates at the separation frequency and dips negative") {
    const SpatialGrid g = make_grid(256, -16.0, 16.0);
    const double d = 8.0;
    const WaveFunction a = build_gaussian_packet(g, -d / 2.0, 1.0, 0.0);
    const WaveFunction b = build_gaussian_packet(g, d / 2.0, 1.0, 0.0);
    DensityMatrix rho = pure_density(superpose(a, b, 1.0, 1.0));
    const WignerFunction w = wigner_transform(rho);

    const int mid = g.n_points / 2;  // x = 0 sits at index n/2 on this grid
    REQUIRE(std::abs(g.point(mid)) < 1e-12);

    SUBCASE("midpoint slice has period 2 pi / d in momentum") {
        //   locate successive maxima of W(0, p) around p = 0
        std::vector<double> peaks;
        for (int k = 1; k + 1 < g.n_points; ++k) {
            if (std::abs(w.p[k]) > 2.5) continue;
            if (w.values(mid, k) > w.values(mid, k - 1) &&
                w.values(mid, k) > w.values(mid, k + 1) &&
                w.values(mid, k) > 0.05) {
                peaks.push_back(w.p[k]);
            }
        }
        REQUIRE(peaks.size() >= 3);
        const double period = (peaks.back() - peaks.front()) / (peaks.size() - 1);
        CHECK(period == doctest::Approx(2.0 * M_PI / d).epsilon(0.05));
    }
    SUBCASE("coherence shows up as negativity, damped by monitoring") {
        const double neg0 = w.values.row(mid).minCoeff();
        CHECK(neg0 < -0.05);

        rates::apply_spatial_decoherence_inplace(rho, 3.0 / (d * d), 1.0);
        const WignerFunction wd = wigner_transform(rho);
        const double neg1 = wd.values.row(mid).minCoeff();
        CHECK(neg1 > neg0);
        // oscillation amplitude shrinks with the coherence lobes
        CHECK(wd.values.row(mid).maxCoeff() < w.values.row(mid).maxCoeff());
    }
}

TEST_CASE("marginals recover the position distribution") {
    const SpatialGrid g = make_grid(256, -12.0, 12.0);
    auto check_marginal = [&](const DensityMatrix& rho) {
        const WignerFunction w = wigner_transform(rho);
        const RVec m = marginal_position(w);
        const RVec d = position_distribution(rho);
        CHECK((m - d).cwiseAbs().maxCoeff() < 1e-6);
    };
    check_marginal(pure_density(build_gaussian_packet(g, 1.0, 1.0, 0.5)));
    const WaveFunction a = build_gaussian_packet(g, -3.0, 1.0, 0.0);
    const WaveFunction b = build_gaussian_packet(g, 3.0, 1.0, 0.0);
    check_marginal(pure_density(superpose(a, b, 1.0, 1.0)));
    check_marginal(pure_density(oscillator_eigenstate(g, 9, 1.0)));
}

TEST_CASE("oscillator eigenstates") {
    const SpatialGrid g = make_grid(256, -10.0, 10.0);

    SUBCASE("ground state is the positive bell") {
        const WignerFunction w = wigner_transform(pure_density(oscillator_eigenstate(g, 0, 1.0)));
        CHECK(w.values.minCoeff() > -1e-9);
    }
    SUBCASE("orthonormal family") {
        std::vector<WaveFunction> states;
        for (int n = 0; n <= 12; ++n) states.push_back(oscillator_eigenstate(g, n, 1.0));
        for (int m = 0; m <= 12; ++m) {
            for (int n = 0; n <= 12; ++n) {
                const Complex ov = inner_product(states[m], states[n]);
                const double expected = (m == n) ? 1.0 : 0.0;
                CHECK(std::abs(ov - expected) < 1e-8);
            }
        }
    }
    SUBCASE("ninth state against the explicit polynomial") {
        const WaveFunction psi = oscillator_eigenstate(g, 9, 1.0);
        for (int i = 0; i < g.n_points; i += 3) {
            const double expected = oracles::hermite9_function(g.point(i));
            // recurrence and explicit coefficients may differ in global sign
            CHECK(std::abs(std::abs(psi.amplitudes[i].real()) - std::abs(expected)) <
                  1e-8);
        }
        // marginal of the transform equals the probability density
        const WignerFunction w = wigner_transform(pure_density(psi));
        const RVec m = marginal_position(w);
        for (int i = 0; i < g.n_points; i += 3) {
            const double expected = std::pow(oracles::hermite9_function(g.point(i)), 2);
            CHECK(std::abs(m[i] - expected) < 1e-6);
        }
    }
    SUBCASE("ninth state phase-space picture matches the closed form") {
        const WignerFunction w = wigner_transform(pure_density(oscillator_eigenstate(g, 9, 1.0)));
        double max_err = 0.0;
        for (int i = 0; i < g.n_points; ++i) {
            for (int k = 0; k < g.n_points; ++k) {
                const double expected =
                    oracles::oscillator_phase_space(9, g.point(i), w.p[k]);
                max_err = std::max(max_err, std::abs(w.values(i, k) - expected));
            }
        }
        CHECK(max_err < 1e-5);
        CHECK(w.values.minCoeff() < -0.05);  // strongly non-classical
    }
    SUBCASE("narrow grid is rejected") {
        const SpatialGrid narrow = make_grid(64, -4.0, 4.0);
        CHECK_THROWS_AS(oscillator_eigenstate(narrow, 9, 1.0), GridTooNarrow);
    }
}

TEST_CASE("monitored oscillator breaks the position-momentum symmetry") {
    const SpatialGrid g = make_grid(256, -10.0, 10.0);

    const OscillatorDemo clean = decohered_oscillator_demo(g, 9, 0.0);
    CHECK(variance_x(clean.w) == doctest::Approx(variance_p(clean.w)).epsilon(1e-6));

    const double lt = 0.5;
    const OscillatorDemo damped = decohered_oscillator_demo(g, 9, lt);
    CHECK(variance_x(damped.w) == doctest::Approx(variance_x(clean.w)).epsilon(1e-9));
    CHECK(variance_p(damped.w) ==
          doctest::Approx(variance_p(clean.w) + 2.0 * lt).epsilon(1e-6));

    // smearing in momentum lifts the negative troughs
    double prev_min = -1.0;
    for (double ramp : {0.0, 0.25, 0.5, 1.0}) {
        const OscillatorDemo demo = decohered_oscillator_demo(g, 9, ramp);
        const double mn = demo.w.values.minCoeff();
        CHECK(mn >= prev_min - 1e-12);
        prev_min = mn;
    }
}

TEST_CASE("transform is linear in the state") {
    const SpatialGrid g = make_grid(128, -10.0, 10.0);
    const DensityMatrix r1 = pure_density(build_gaussian_packet(g, -1.5, 0.9, 0.0));
    const DensityMatrix r2 = pure_density(build_gaussian_packet(g, 2.0, 1.2, 0.3));
    const double alpha = 0.3;
    const DensityMatrix mix{alpha * r1.elements + (1.0 - alpha) * r2.elements, g};

    const WignerFunction w1 = wigner_transform(r1);
    const WignerFunction w2 = wigner_transform(r2);
    const WignerFunction wm = wigner_transform(mix);
    const RMat expected = alpha * w1.values + (1.0 - alpha) * w2.values;
    CHECK((wm.values - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("reflecting the state reflects the phase-space picture") {
    const SpatialGrid g = make_grid(128, -10.0, 10.0);
    const DensityMatrix rho = pure_density(build_gaussian_packet(g, 1.5, 0.8, 0.7));
    const int n = g.n_points;
    CMat refl(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) refl(i, j) = rho.elements(n - 1 - i, n - 1 - j);
    const DensityMatrix mirrored{refl, g};

    const WignerFunction w = wigner_transform(rho);
    const WignerFunction wm = wigner_transform(mirrored);
    double max_err = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int k = 1; k < n; ++k) {  // p = -p_max has no mirror partner
            max_err = std::max(max_err,
                               std::abs(wm.values(i, k) - w.values(n - 1 - i, n - k)));
        }
    }
    CHECK(max_err < 1e-10);
}

TEST_CASE("transform rejects damaged states") {
    const SpatialGrid g = make_grid(64, -8.0, 8.0);
    DensityMatrix rho = pure_density(build_gaussian_packet(g, 0.0, 1.0, 0.0));
    rho.elements(0, 1) += Complex(1e-6, 0.0);
    CHECK_THROWS_AS(wigner_transform(rho), NonHermitianInput);
}
