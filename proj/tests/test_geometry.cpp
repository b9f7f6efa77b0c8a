#include <doctest.h>

#include <cmath>
#include <random>

#include "monopole/geometry.hpp"
#include "monopole/verify.hpp"

using namespace monopole;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("metric samples") {
    auto eq = metric_at(kPi / 2.0);
    CHECK(eq.g_thth == 1.0);
    CHECK(eq.g_phph == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eq.sqrt_det == doctest::Approx(1.0).epsilon(1e-15));

    auto m = metric_at(kPi / 3.0);
    CHECK(m.g_phph == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(m.sqrt_det == doctest::Approx(0.8660254037844386).epsilon(1e-15));

    CHECK_THROWS_AS(metric_at(0.0), PoleProximityError);
    CHECK_THROWS_AS(metric_at(kPi), PoleProximityError);
    CHECK_THROWS_AS(metric_at(5e-9), PoleProximityError);
}

TEST_CASE("metric determinant identity on random latitudes") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        double th = uniform_in(rng, 1e-6, kPi - 1e-6);
        auto m = metric_at(th);
        CHECK(m.sqrt_det * m.sqrt_det ==
              doctest::Approx(m.g_thth * m.g_phph).epsilon(1e-14));
        CHECK(m.g_phph > 0.0);
    }
}

TEST_CASE("potentials on both patches") {
    BundleData half{0.5, 1};
    CHECK(potential_at(Patch::North, half, kPi / 2) == doctest::Approx(0.5));
    CHECK(potential_at(Patch::South, half, kPi / 2) == doctest::Approx(-0.5));
    CHECK(potential_at(Patch::North, half, 1e-9) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(potential_at(Patch::North, half, 0.0) == 0.0);

    CHECK_THROWS_AS(potential_at(Patch::North, half, kPi), PatchDomainError);
    CHECK_THROWS_AS(potential_at(Patch::South, half, 0.0), PatchDomainError);
}

TEST_CASE("gauge compatibility: A1 - A2 equals the transition slope") {
    std::mt19937_64 rng(11);
    for (const auto& bundle :
         {BundleData{0.5, 1}, BundleData{0.5, 7}, BundleData{1.0, 3},
          BundleData{1.5, 2}}) {
        double expected = 2.0 * bundle.effective_charge();
        for (int i = 0; i < 50; ++i) {
            double th = uniform_in(rng, 1e-3, kPi - 1e-3);
            double diff = potential_at(Patch::North, bundle, th) -
                          potential_at(Patch::South, bundle, th);
            CHECK(std::abs(diff - expected) < 1e-12);
        }
        CHECK(bundle.charge_quantized());
        CHECK(bundle.chern_number() ==
              doctest::Approx(2.0 * bundle.N * bundle.B));
    }
}

TEST_CASE("transition function values") {
    BundleData half{0.5, 1};
    CHECK(std::abs(transition_at(half, 0.0) - std::complex<double>(1, 0)) <
          1e-15);
    CHECK(std::abs(transition_at(half, kPi) - std::complex<double>(-1, 0)) <
          1e-15);
    BundleData unit{0.5, 2};  // effective charge 1
    CHECK(std::abs(transition_at(unit, kPi / 2) - std::complex<double>(-1, 0)) <
          1e-15);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        double phi = uniform_in(rng, 0.0, kTwoPi);
        CHECK(std::abs(std::abs(transition_at(unit, phi)) - 1.0) < 1e-15);
    }
}

TEST_CASE("latitude holonomy closed forms") {
    BundleData half{0.5, 1};
    auto equator = holonomy(latitude_loop(kPi / 2, 1000), half);
    CHECK(std::abs(equator - std::complex<double>(-1, 0)) < 1e-12);

    auto tiny = holonomy(latitude_loop(1e-4, 1000), half);
    CHECK(std::abs(tiny - std::complex<double>(1, 0)) < 1e-6);

    // enclosed flux 2*pi*(1/2)*(1 - cos(2pi/3)) = 3*pi/2
    auto lower = holonomy(latitude_loop(2.0 * kPi / 3.0, 1000), half);
    CHECK(std::abs(lower - std::polar(1.0, 1.5 * kPi)) < 1e-12);

    // total flux: holonomy tends to exp(4 pi i N B) = 1 as theta -> pi
    auto almost_full = holonomy(latitude_loop(kPi - 1e-4, 1000), half);
    CHECK(std::abs(almost_full - std::complex<double>(1, 0)) < 1e-3);
}

TEST_CASE("holonomy against the parallel-transport oracle") {
    for (const auto& bundle : {BundleData{0.5, 1}, BundleData{0.5, 3}}) {
        for (double th : {0.4, 1.2, 2.0, 2.7}) {
            auto loop = latitude_loop(th, 4000);
            auto h = holonomy(loop, bundle);
            auto oracle = transport_ode_oracle(loop, bundle);
            CHECK(std::abs(h - oracle) < 1e-8);
        }
    }
}

TEST_CASE("holonomy of a tilted loop is gauge independent") {
    // circle crossing the equator: theta oscillates around pi/2
    BundleData bundle{0.5, 2};
    const int n = 8000;
    LoopPath loop;
    loop.closed = true;
    for (int i = 0; i <= n; ++i) {
        double phi = kTwoPi * i / n;
        loop.samples.push_back(
            {kPi / 2.0 + 0.6 * std::sin(phi), wrap_two_pi(phi)});
    }
    auto switched = holonomy(loop, bundle);

    // the same loop avoids theta = pi, so the north potential alone is valid:
    // plain trapezoid of A_north dphi with no patch switching
    double nb = bundle.effective_charge();
    double phase = 0.0;
    for (int i = 0; i < n; ++i) {
        double a = nb * (1.0 - std::cos(loop.samples[i][0]));
        double b = nb * (1.0 - std::cos(loop.samples[i + 1][0]));
        phase += 0.5 * (a + b) * (kTwoPi / n);
    }
    CHECK(std::abs(switched - std::polar(1.0, phase)) < 1e-10);
    CHECK(std::abs(switched - transport_ode_oracle(loop, bundle)) < 1e-8);
}

TEST_CASE("holonomy input validation") {
    BundleData half{0.5, 1};
    LoopPath open_arc;
    open_arc.closed = false;
    open_arc.samples = {{1.0, 0.0}, {1.0, 1.0}, {1.0, 2.0}};
    CHECK_THROWS_AS(holonomy(open_arc, half), OpenLoopError);

    LoopPath mislabeled;
    mislabeled.closed = true;
    mislabeled.samples = {{1.0, 0.0}, {1.0, 1.0}, {1.2, 2.0}};
    CHECK_THROWS_AS(holonomy(mislabeled, half), OpenLoopError);

    CHECK_THROWS_AS(holonomy(latitude_loop(1e-10, 100), half),
                    PoleCrossingError);
}

TEST_SUITE_END();
