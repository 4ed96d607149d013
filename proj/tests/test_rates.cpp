#include "decolab/errors.hpp"
#include "decolab/rates.hpp"
#include "decolab/wavefunction.hpp"

#include <doctest.h>

#include <cmath>

using namespace decolab;
using namespace decolab::rates;

TEST_CASE("localization rate") {
    SUBCASE("unit inputs") {
        CHECK(localization_rate({1.0, 1.0, 1.0, 1.0, ""}) == 1.0);
    }
    SUBCASE("quadratic in the wave number, exact for power-of-two scaling") {
        const ScatteringEnvironment env{3.0, 2.0, 0.5, 1.0, ""};
        ScatteringEnvironment doubled = env;
        doubled.wave_number *= 2.0;
        CHECK(localization_rate(doubled) == 4.0 * localization_rate(env));
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(localization_rate({0.0, 1.0, 1.0, 1.0, ""}), ValidationError);
    }
    SUBCASE("thermal gas estimate lands in the published decade range") {
        // independent CGS arithmetic: N2 at 300 K, geometric cross-section
        const double mass = 28.0 * 1.66054e-24;
        const double kT = cgs::kBoltz * 300.0;
        const double k = std::sqrt(3.0 * mass * kT) / cgs::kHbar;  // rms momentum
        const double v = std::sqrt(8.0 * kT / (M_PI * mass));      // mean speed
        const double a = 1e-3;
        const ScatteringEnvironment air{k, 2.7e19 * v, M_PI * a * a, 1.0, "air"};
        const double lam = localization_rate(air);
        CHECK(lam >= 1e34);
        CHECK(lam <= 1e38);
    }
}

TEST_CASE("off-diagonal decay rate from collisions") {
    SUBCASE("indistinguishable environments do nothing") {
        CHECK(offdiag_decay_rate(5.0, Complex(1.0, 0.0)).decay == 0.0);
    }
    SUBCASE("perfect discrimination decoheres at the collision rate") {
        CHECK(offdiag_decay_rate(5.0, Complex(0.0, 0.0)).decay == 5.0);
    }
    SUBCASE("partial overlap halves the coherence at t = ln 2 / rate") {
        const OffdiagRate r = offdiag_decay_rate(10.0, Complex(0.9, 0.0));
        CHECK(r.decay == doctest::Approx(1.0).epsilon(1e-14));
        const double coherence0 = 0.5;
        const double at_halflife = coherence0 * std::exp(-r.decay * std::log(2.0));
        CHECK(at_halflife == doctest::Approx(0.25).epsilon(1e-14));
    }
    SUBCASE("complex overlap splits into damping and phase drift") {
        const OffdiagRate r = offdiag_decay_rate(4.0, Complex(0.5, 0.25));
        CHECK(r.decay == doctest::Approx(2.0));
        CHECK(r.phase == doctest::Approx(1.0));
    }
    SUBCASE("overlap magnitude beyond one is rejected") {
        CHECK_THROWS_AS(offdiag_decay_rate(1.0, Complex(1.1, 0.0)), InvalidOverlap);
    }
}

TEST_CASE("spatial decoherence factor") {
    const SpatialGrid g = make_grid(128, -12.0, 12.0);
    const WaveFunction a = build_gaussian_packet(g, -3.0, 0.8, 0.0);
    const WaveFunction b = build_gaussian_packet(g, 3.0, 0.8, 0.0);
    const DensityMatrix rho = pure_density(superpose(a, b, 1.0, 1.0));

    SUBCASE("zero exposure is the identity") {
        const DensityMatrix out = apply_spatial_decoherence(rho, 0.5, 0.0);
        CHECK((out.elements - rho.elements).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("diagonal is bit-identical for any exposure") {
        const DensityMatrix out = apply_spatial_decoherence(rho, 0.7, 2.0);
        for (int i = 0; i < g.n_points; ++i) {
            CHECK(out.elements(i, i) == rho.elements(i, i));
        }
    }
    SUBCASE("coherence lobe is halved at Lambda t = ln2/d^2") {
        const double d = 6.0;
        const double lt = std::log(2.0) / (d * d);
        const DensityMatrix out = apply_spatial_decoherence(rho, lt, 1.0);
        // the lobe centre sits at (d/2, -d/2), i.e. xi = d
        const int bi = static_cast<int>(std::lround((3.0 - g.x_min) / g.spacing()));
        const int bj = static_cast<int>(std::lround((-3.0 - g.x_min) / g.spacing()));
        const double xi = (bi - bj) * g.spacing();
        const double ratio = std::abs(out.elements(bi, bj)) / std::abs(rho.elements(bi, bj));
        CHECK(ratio == doctest::Approx(std::exp(-lt * xi * xi)).epsilon(1e-12));
        CHECK(ratio == doctest::Approx(0.5).epsilon(0.02));  // xi rounds near d
        // diagonal lobes persist untouched
        const int di = static_cast<int>(std::lround((3.0 - g.x_min) / g.spacing()));
        CHECK(out.elements(di, di) == rho.elements(di, di));
    }
    SUBCASE("two exposures compose like one") {
        const DensityMatrix two =
            apply_spatial_decoherence(apply_spatial_decoherence(rho, 0.3, 0.7), 0.3, 1.1);
        const DensityMatrix one = apply_spatial_decoherence(rho, 0.3, 1.8);
        double rel = 0.0;
        for (int j = 0; j < g.n_points; ++j) {
            for (int i = 0; i < g.n_points; ++i) {
                const double denom = std::max(std::abs(one.elements(i, j)), 1e-30);
                rel = std::max(rel, std::abs(two.elements(i, j) - one.elements(i, j)) / denom);
            }
        }
        CHECK(rel < 1e-12);
    }
    SUBCASE("factor stays within (0,1] and is monotone in t") {
        const DensityMatrix t1 = apply_spatial_decoherence(rho, 0.5, 1.0);
        const DensityMatrix t2 = apply_spatial_decoherence(rho, 0.5, 2.0);
        for (int j = 0; j < g.n_points; j += 7) {
            for (int i = 0; i < g.n_points; i += 7) {
                const double r0 = std::abs(rho.elements(i, j));
                if (r0 < 1e-14) continue;
                const double f1 = std::abs(t1.elements(i, j)) / r0;
                const double f2 = std::abs(t2.elements(i, j)) / r0;
                CHECK(f1 <= 1.0 + 1e-12);
                CHECK(f2 <= f1 + 1e-12);
                CHECK(f1 > 0.0);
            }
        }
    }
}

TEST_CASE("field decoherence factors") {
    SUBCASE("no field, no suppression") {
        QedScenario s{1.0, 1.0, 0.0, 1.0, 3.0};
        CHECK(qed_vacuum_factor(s) == 1.0);
        CHECK(qed_pair_factor(s) == 1.0);
    }
    SUBCASE("no elapsed time, no suppression") {
        QedScenario s{1.0, 1.0, 2.0, 1.0, 0.0};
        CHECK(qed_vacuum_factor(s) == 1.0);
        CHECK(qed_pair_factor(s) == 1.0);
    }
    SUBCASE("long-time limit of the polarisation factor") {
        QedScenario s{1.0, 1.0, 2.0, 1.0, 1e10};
        const double limit = qed_vacuum_factor_limit(s);
        CHECK(std::abs(qed_vacuum_factor(s) - limit) / limit < 1e-9);
    }
    SUBCASE("weak fields leave pair creation negligible") {
        // E at a tenth of the critical field
        QedScenario s{1.0, 1.0, 0.1, 1.0, 1.0};
        CHECK(std::abs(log_qed_pair_factor(s)) <
              1e-3 * std::abs(log_qed_vacuum_factor(s)));
    }
    SUBCASE("strong fields make pair creation dominant") {
        QedScenario s{1.0, 1.0, 2.0, 1.0, 1e4};
        CHECK(qed_pair_factor(s) < 1e-50);
        CHECK(qed_vacuum_factor(s) > 0.99);
    }
    SUBCASE("factors stay in (0,1] and decrease with time") {
        QedScenario s{1.0, 1.0, 2.0, 1.0, 0.5};
        double prev_v = 1.0, prev_pc = 1.0;
        for (double t : {0.5, 1.0, 2.0, 4.0}) {
            s.time = t;
            const double dv = qed_vacuum_factor(s);
            const double dpc = qed_pair_factor(s);
            CHECK(dv > 0.0);
            CHECK(dv <= prev_v);
            CHECK(dpc > 0.0);
            CHECK(dpc <= prev_pc);
            prev_v = dv;
            prev_pc = dpc;
        }
    }
}

TEST_CASE("dominance ratio of the two field factors") {
    QedScenario s{1.0, 1.0, 2.0, 1.0, 1.0};

    SUBCASE("falls by more than ten when time grows a hundredfold") {
        const double r1 = qed_dominance_ratio(s);
        s.time = 100.0;
        const double r100 = qed_dominance_ratio(s);
        CHECK(r100 < r1 / 10.0);
    }
    SUBCASE("ratio times elapsed time settles to a constant") {
        s.time = 1e3;
        const double a = qed_dominance_ratio(s) * s.mass * s.time;
        s.time = 1e4;
        const double b = qed_dominance_ratio(s) * s.mass * s.time;
        CHECK(a == doctest::Approx(b).epsilon(1e-4));
    }
    SUBCASE("below the critical field the ratio is out of regime") {
        s.field = 0.5;  // E_c = 1
        CHECK_THROWS_AS(qed_dominance_ratio(s), RegimeError);
        s.field = 1.0;
        CHECK_THROWS_AS(qed_dominance_ratio(s), RegimeError);
    }
}

TEST_CASE("gravitational monitoring rate") {
    const GravityScenario air{2.7e19, 4.6495e-23, 300.0, 1.0, 1.0};

    SUBCASE("linear in the density") {
        GravityScenario doubled = air;
        doubled.number_density *= 2.0;
        CHECK(gravity_rate(doubled) == doctest::Approx(2.0 * gravity_rate(air)).epsilon(1e-14));
    }
    SUBCASE("temperature to the minus three halves") {
        GravityScenario hot = air;
        hot.temperature *= 4.0;
        CHECK(gravity_rate(hot) == doctest::Approx(gravity_rate(air) / 8.0).epsilon(1e-12));
    }
    SUBCASE("room air in a centimetre box: hand CGS arithmetic") {
        // (pi m / 2 k_B T)^{3/2} * n * L^4, reproduced from the constants
        const double arg = M_PI * 4.6495e-23 / (2.0 * cgs::kBoltz * 300.0);
        const double expected = 2.7e19 * std::pow(arg, 1.5);
        CHECK(gravity_rate(air) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(gravity_rate(air) == doctest::Approx(2.0e6).epsilon(0.01));
    }
    SUBCASE("coherence width after one second") {
        const double w = gravity_coherence_width(air);
        CHECK(w == doctest::Approx(7.21e-7).epsilon(0.01));
        CHECK(w > 1e-7);
        CHECK(w < 1e-5);
    }
    SUBCASE("square-root-of-time narrowing") {
        GravityScenario longer = air;
        longer.elapsed_time *= 100.0;
        CHECK(gravity_coherence_width(longer) ==
              doctest::Approx(gravity_coherence_width(air) / 10.0).epsilon(1e-12));
    }
    SUBCASE("vanishing rate reports an infinite width") {
        GravityScenario frozen = air;
        frozen.temperature = 1e300;  // rate underflows to zero
        CHECK(std::isinf(gravity_coherence_width(frozen)));
    }
}

TEST_CASE("localisation-rate table from the shipped presets") {
    const auto presets = load_table1_presets("data/table1_presets.txt");
    REQUIRE(presets.size() == 15);
    const auto rows = table1_generate(presets);

    SUBCASE("every cell is within two decades of the reference") {
        for (const auto& r : rows) {
            INFO(r.preset.environment, " a=", r.preset.size_cm);
            CHECK(std::abs(r.log10_deviation) <= 2.0);
        }
    }
    SUBCASE("reference values for spot cells") {
        for (const auto& r : rows) {
            if (r.preset.environment == "air_molecules" && r.preset.size_cm == 1e-3) {
                CHECK(r.preset.paper_log10 == 36.0);
            }
            if (r.preset.environment == "cosmic_background_radiation" &&
                r.preset.size_cm == 1e-6) {
                CHECK(r.preset.paper_log10 == -12.0);
            }
        }
    }
    SUBCASE("preset numbers reproduce from physical constants") {
        // independent recomputation of k, flux, sigma for each environment
        const double zeta3 = 1.2020569031595943;
        const double kmean_coeff = std::pow(M_PI, 4) / (30.0 * zeta3);
        auto thermal_k = [&](double temp) {
            return kmean_coeff * cgs::kBoltz * temp / (cgs::kHbar * cgs::kLight);
        };
        auto photon_density = [&](double temp) {
            const double kt = cgs::kBoltz * temp / (cgs::kHbar * cgs::kLight);
            return 2.0 * zeta3 / (M_PI * M_PI) * kt * kt * kt;
        };
        const double m_n2 = 28.0 * 1.66054e-24;
        const double k_gas = std::sqrt(3.0 * m_n2 * cgs::kBoltz * 300.0) / cgs::kHbar;
        const double v_gas = std::sqrt(8.0 * cgs::kBoltz * 300.0 / (M_PI * m_n2));

        for (const auto& p : presets) {
            double k = 0.0, flux = 0.0;
            if (p.environment == "cosmic_background_radiation") {
                k = thermal_k(2.725);
                flux = photon_density(2.725) * cgs::kLight;
            } else if (p.environment == "photons_300K") {
                k = thermal_k(300.0);
                flux = photon_density(300.0) * cgs::kLight;
            } else if (p.environment == "sunlight_on_earth") {
                k = thermal_k(5778.0);
                flux = 1.361e6 / (kmean_coeff * cgs::kBoltz * 5778.0);
            } else if (p.environment == "air_molecules") {
                k = k_gas;
                flux = 2.7e19 * v_gas;
            } else {
                k = k_gas;
                flux = 1e3 * v_gas;
            }
            INFO(p.environment, " a=", p.size_cm);
            CHECK(p.wave_number == doctest::Approx(k).epsilon(1e-5));
            CHECK(p.flux == doctest::Approx(flux).epsilon(1e-5));
            const double a = p.size_cm;
            const double sigma =
                p.regime == "long_wavelength"
                    ? (8.0 * M_PI / 3.0) * std::pow(k, 4) * std::pow(a, 6)
                    : (p.environment == "air_molecules" ||
                       p.environment == "laboratory_vacuum")
                          ? 2.0 * M_PI * a * a
                          : M_PI * a * a;
            CHECK(p.sigma_eff == doctest::Approx(sigma).epsilon(1e-5));
        }
    }
    SUBCASE("missing preset file is an I/O error") {
        CHECK_THROWS_AS(load_table1_presets("data/no_such_file.txt"), IoError);
    }
}
