#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "monopole/canonical.hpp"
#include "monopole/io.hpp"
#include "monopole/symbols.hpp"

using namespace monopole;

TEST_SUITE_BEGIN("canonical");

TEST_CASE("eikonal slopes and differences") {
    auto torus = build_torus(0.3125, 0.0, 0.5);
    EikonalSpec north{torus, Branch::Plus, Patch::North, 0.0};
    EikonalSpec south{torus, Branch::Plus, Patch::South, 0.0};
    EikonalSpec minus{torus, Branch::Minus, Patch::North, 0.0};

    double th = 1.2;
    // phi dependence: slope P + B on the north patch
    CHECK(eikonal_at(north, th, 0.7) - eikonal_at(north, th, 0.0) ==
          doctest::Approx(0.5 * 0.7).epsilon(1e-14));
    // gauge difference is the transition phase per unit power: 2 B phi
    CHECK(eikonal_at(north, th, 0.9) - eikonal_at(south, th, 0.9) ==
          doctest::Approx(2.0 * 0.5 * 0.9).epsilon(1e-14));
    // branch difference is twice the action increment
    CHECK(eikonal_at(north, th, 0.4) - eikonal_at(minus, th, 0.4) ==
          doctest::Approx(2.0 * action_closed(torus, th)).epsilon(1e-12));

    CHECK_THROWS_AS(eikonal_at(north, 0.2, 0.0), OutOfAnnulusError);
}

TEST_CASE("eikonal differentials solve the energy equation in both gauges") {
    std::mt19937_64 rng(51);
    BundleData classical{0.5, 1};  // potential of the classical charge B
    for (int trial = 0; trial < 10; ++trial) {
        double E = uniform_in(rng, 0.1, 2.0);
        double P = uniform_in(rng, -0.9, 0.9) * std::sqrt(E + 0.25);
        auto torus = build_torus(E, P, 0.5);
        double w = torus.annulus_width();
        for (Patch patch : {Patch::North, Patch::South}) {
            for (Branch branch : {Branch::Plus, Branch::Minus}) {
                EikonalSpec spec{torus, branch, patch, 0.0};
                for (int i = 0; i < 10; ++i) {
                    double th = uniform_in(rng, torus.theta2 + 0.02 * w,
                                           torus.theta1 - 0.02 * w);
                    double h = 1e-6;
                    double dth = (eikonal_at(spec, th + h, 0.3) -
                                  eikonal_at(spec, th - h, 0.3)) /
                                 (2 * h);
                    double dphi = (eikonal_at(spec, th, 0.3 + h) -
                                   eikonal_at(spec, th, 0.3 - h)) /
                                  (2 * h);
                    PhasePoint pt{th, 0.3, dth, dphi};
                    CHECK(h0_at(pt, patch, classical) ==
                          doctest::Approx(E).epsilon(1e-6));
                }
            }
        }
    }
}

TEST_CASE("half-density amplitude") {
    auto torus = build_torus(0.3125, 0.0, 0.5);
    CHECK(amplitude_at(torus, kPi / 2) ==
          doctest::Approx(0.9457416090031758).epsilon(1e-12));
    // symmetric torus: amplitude is even about the equator
    CHECK(amplitude_at(torus, 1.0) ==
          doctest::Approx(amplitude_at(torus, kPi - 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(amplitude_at(torus, torus.theta1 - 1e-9),
                    CausticSingularityError);

    // transport identity: 2 p_theta a^2 sin(theta) is constant
    std::mt19937_64 rng(52);
    for (int i = 0; i < 100; ++i) {
        double th = uniform_in(rng, torus.theta2 + 1e-3, torus.theta1 - 1e-3);
        double a = amplitude_at(torus, th);
        double flux = 2.0 * p_theta_branch(torus, th, Branch::Plus) * a * a *
                      std::sin(th);
        CHECK(flux == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("plateau cutoff support and plateau") {
    auto torus = build_torus(0.3125, 0.0, 0.5);
    auto cutoff = CutoffSpec::fraction(torus, 0.1);
    double d = cutoff.delta;
    CHECK(plateau_cutoff(torus, cutoff, torus.theta2 + 0.5 * d) == 0.0);
    CHECK(plateau_cutoff(torus, cutoff, torus.theta2 + 2.0 * d) == 1.0);
    CHECK(plateau_cutoff(torus, cutoff, 0.5 * (torus.theta1 + torus.theta2)) ==
          1.0);
    double mid_slope = plateau_cutoff(torus, cutoff, torus.theta2 + 1.5 * d);
    CHECK(mid_slope > 0.0);
    CHECK(mid_slope < 1.0);

    CutoffSpec wide{0.3 * torus.annulus_width()};
    CHECK_THROWS_AS(plateau_cutoff(torus, wide, kPi / 2),
                    std::invalid_argument);
}

TEST_CASE("section construction and Fourier content") {
    auto level = level_for(12, 1);
    auto sec = almost_eigenfunction(level, 7, 801, 32);

    CHECK(sec.mode_north() == 7);
    CHECK(sec.mode_south() == 7 - 12);

    // single Fourier mode in phi: the discrete transform of any theta row has
    // exactly one nonvanishing coefficient, at k1 mod n_phi
    const int np = 32;
    int row = 400;
    for (int k = 0; k < np; ++k) {
        std::complex<double> coeff = 0.0;
        for (int p = 0; p < np; ++p)
            coeff += sec.north_at(row, p) *
                     std::polar(1.0, -kTwoPi * k * p / np);
        coeff /= static_cast<double>(np);
        if (k == ((sec.k1 % np) + np) % np)
            CHECK(std::abs(coeff) > 1e-8);
        else
            CHECK(std::abs(coeff) < 1e-13);
    }

    // support is confined to the cutoff window inside the annulus
    for (int i = 0; i < 801; ++i) {
        double th = sec.theta_samples[i];
        if (th < sec.torus.theta2 + sec.cutoff.delta ||
            th > sec.torus.theta1 - sec.cutoff.delta)
            CHECK(std::abs(sec.profile[i]) == 0.0);
    }

    CHECK_THROWS_AS(almost_eigenfunction(level, 100, 801, 32),
                    InvalidModeError);
    CutoffSpec wide{0.4 * build_torus(level.E, periodicity_P(12, 7), 0.5)
                              .annulus_width()};
    CHECK_THROWS_AS(almost_eigenfunction(level, 7, 801, 32, &wide),
                    std::invalid_argument);
}

TEST_CASE("gauge consistency of the section on the overlap") {
    auto sec = almost_eigenfunction(level_for(16, 2), 8, 801, 16);
    double worst = 0.0;
    for (int i = 0; i < 801; ++i)
        for (int p = 0; p < 16; ++p) {
            auto expected = std::polar(1.0, 16.0 * sec.phi_samples[p]) *
                            sec.south_at(i, p);
            worst = std::max(worst, std::abs(sec.north_at(i, p) - expected));
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("residual norms behave") {
    auto sec = almost_eigenfunction(level_for(16, 2), 8, 2001, 8);
    auto r = residual_norms(sec);
    CHECK(r.global > 0.0);
    CHECK(r.plateau > 0.0);
    CHECK(r.plateau < r.global);  // the cutoff commutator dominates globally
    CHECK(std::isfinite(r.global));

    // detuning the reference eigenvalue raises the plateau residual
    auto detuned = residual_norms(sec, 1.0);
    CHECK(detuned.plateau > r.plateau);

    // Nyquist guard
    auto coarse = almost_eigenfunction(level_for(64, 2), 32, 31, 8);
    CHECK_THROWS_AS(residual_norms(coarse), GridResolutionError);

    // boundary torus (k1 = 0 makes the annulus touch the north pole): the
    // residual must stay finite despite the singular potential at theta = 0
    auto edge = almost_eigenfunction(level_for(12, 1), 0, 2001, 8);
    CHECK(edge.torus.theta2 == doctest::Approx(0.0).epsilon(1e-9));
    auto re = residual_norms(edge);
    CHECK(std::isfinite(re.global));
    CHECK(std::isfinite(re.plateau));
    CHECK(re.plateau > 0.0);
}

TEST_CASE("section JSON record") {
    auto sec = almost_eigenfunction(level_for(8, 1), 4, 201, 8);
    auto j = section_record(sec);
    CHECK(j["N"].get<int>() == 8);
    CHECK(j["k1"].get<int>() == 4);
    CHECK(j["north_re_im"].size() == 2 * 201 * 8);
    CHECK(j["theta"].size() == 201);
    CHECK(j["cutoff"].contains("plateau"));
}

TEST_SUITE_END();
