#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "monopole/io.hpp"
#include "monopole/tori.hpp"

using namespace monopole;

namespace {

InvariantTorus random_torus(std::mt19937_64& rng) {
    double E = uniform_in(rng, 0.05, 3.0);
    double B = 0.5;
    double P = uniform_in(rng, -0.97, 0.97) * std::sqrt(E + B * B);
    return build_torus(E, P, B);
}

}  // namespace

TEST_SUITE_BEGIN("tori");

TEST_CASE("reference torus construction") {
    auto t = build_torus(0.3125, 0.0, 0.5);
    CHECK(t.discriminant == doctest::Approx(0.703125).epsilon(1e-15));
    double z = std::sqrt(5.0) / 3.0;
    CHECK(t.z1 == doctest::Approx(-z).epsilon(1e-14));
    CHECK(t.z2 == doctest::Approx(z).epsilon(1e-14));
    CHECK(t.theta2 == doctest::Approx(0.7297276562269663).epsilon(1e-12));
    CHECK(t.theta1 == doctest::Approx(2.4118649973628268).epsilon(1e-12));
    // momenta vanish at the caustics
    CHECK(std::abs(p_theta_branch(t, t.theta1, Branch::Plus)) < 1e-12);
    CHECK(std::abs(p_theta_branch(t, t.theta2, Branch::Plus)) < 1e-12);
}

TEST_CASE("degenerate and invalid parameters") {
    auto great_circles = build_torus(1.0, 0.0, 0.0);
    CHECK(great_circles.z1 == doctest::Approx(-1.0));
    CHECK(great_circles.z2 == doctest::Approx(1.0));

    CHECK_THROWS_AS(build_torus(0.1, 1.0, 0.5), EmptyTorusError);
    CHECK_THROWS_AS(build_torus(-1.0, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_torus(0.0, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("boundary tori touch the poles exactly at P = -+B") {
    auto north = build_torus(0.8, -0.5, 0.5);
    CHECK(north.z2 == doctest::Approx(1.0).epsilon(1e-14));
    auto south = build_torus(0.8, 0.5, 0.5);
    CHECK(south.z1 == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("discriminant polynomial identity") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
        auto t = random_torus(rng);
        double direct = 4.0 * (t.E * t.E + t.E * (t.B * t.B - t.P * t.P));
        CHECK(std::abs(t.discriminant - direct) <=
              1e-12 * std::max(1.0, std::abs(direct)));
        // caustic angles are roots of the quadratic
        auto R = [&](double z) { return t.a1 + t.b1 * z + t.c1 * z * z; };
        CHECK(std::abs(R(std::cos(t.theta1))) < 1e-12 * (1.0 + t.E));
        CHECK(std::abs(R(std::cos(t.theta2))) < 1e-12 * (1.0 + t.E));
        CHECK(t.z1 >= -1.0);
        CHECK(t.z2 <= 1.0);
        CHECK(t.z1 <= t.z2);
    }
}

TEST_CASE("momentum branch values") {
    auto t = build_torus(0.3125, 0.0, 0.5);
    CHECK(p_theta_branch(t, kPi / 2, Branch::Plus) ==
          doctest::Approx(0.5590169943749475).epsilon(1e-14));
    CHECK(p_theta_branch(t, kPi / 2, Branch::Minus) ==
          doctest::Approx(-0.5590169943749475).epsilon(1e-14));
    // the branch point lies on the energy shell
    double pt = p_theta_branch(t, 1.1, Branch::Plus);
    double pp = p_phi_on(t, 1.1);
    double s = std::sin(1.1);
    CHECK(pt * pt + pp * pp / (s * s) == doctest::Approx(t.E).epsilon(1e-13));
    CHECK_THROWS_AS(p_theta_branch(t, 0.5, Branch::Plus), OutOfAnnulusError);
    CHECK_THROWS_AS(p_theta_branch(t, 3.0, Branch::Plus), OutOfAnnulusError);
}

TEST_CASE("closed-form action: derivative and quadrature agreement") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = random_torus(rng);
        double w = t.annulus_width();
        for (int i = 0; i < 20; ++i) {
            double th = uniform_in(rng, t.theta2 + 0.01 * w, t.theta1 - 0.01 * w);
            double inc = action_closed(t, th) - action_closed(t, t.theta2);
            CHECK(std::abs(inc - action_quad(t, th)) < 1e-8);
            double h = 1e-6;
            double d = (action_closed(t, th + h) - action_closed(t, th - h)) /
                       (2.0 * h);
            CHECK(std::abs(d - p_theta_branch(t, th, Branch::Plus)) < 1e-6);
        }
    }
}

TEST_CASE("quadrature lower limit and symmetric split") {
    auto t = build_torus(0.3125, 0.0, 0.5);
    CHECK(action_quad(t, t.theta2) == doctest::Approx(0.0).epsilon(1e-15));
    // P = 0 tori are symmetric under theta -> pi - theta
    double half = action_quad(t, kPi / 2);
    double full = action_quad(t, t.theta1);
    CHECK(half == doctest::Approx(full - half).epsilon(1e-10));
    CHECK(action_quad(t, kPi / 2) ==
          doctest::Approx(action_closed(t, kPi / 2) -
                          action_closed(t, t.theta2))
              .epsilon(1e-10));
}

TEST_CASE("complete integral closed forms") {
    auto t = build_torus(0.3125, 0.0, 0.5);
    CHECK(complete_integral(t) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(complete_integral(t) ==
          doctest::Approx(2.0 * (action_closed(t, t.theta1) -
                                 action_closed(t, t.theta2)))
              .epsilon(1e-9));
    CHECK(complete_integral(t) ==
          doctest::Approx(2.0 * action_quad(t, t.theta1)).epsilon(1e-8));

    auto geo = build_torus(2.0, 0.0, 0.0);
    CHECK(complete_integral(geo) ==
          doctest::Approx(kTwoPi * std::sqrt(2.0)).epsilon(1e-14));

    // the annulus collapses as P approaches the boundary
    auto thin = build_torus(1.0, 0.999 * std::sqrt(1.25), 0.5);
    CHECK(complete_integral(thin) < 0.05);
    CHECK(complete_integral(thin) > 0.0);
}

TEST_CASE("complete integral vs cycle identity on random tori") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 50; ++i) {
        auto t = random_torus(rng);
        double via_action = 2.0 * (action_closed(t, t.theta1) -
                                   action_closed(t, t.theta2));
        CHECK(std::abs(complete_integral(t) - via_action) < 1e-9);
    }
}

TEST_CASE("invariant density") {
    auto t = build_torus(0.3125, 0.0, 0.5);
    CHECK(invariant_density(t, kPi / 2) ==
          doctest::Approx(0.8944271909999159).epsilon(1e-12));
    CHECK_THROWS_AS(invariant_density(t, t.theta1 - 1e-9),
                    CausticSingularityError);
    CHECK_THROWS_AS(invariant_density(t, t.theta1),
                    CausticSingularityError);
}

TEST_CASE("JSON record fields") {
    auto t = build_torus(0.3125, 0.0, 0.5);
    auto j = torus_record(t);
    CHECK(j["E"].get<double>() == doctest::Approx(0.3125));
    CHECK(j["J"].get<double>() == doctest::Approx(kPi / 2).epsilon(1e-14));
    for (const char* key :
         {"E", "P", "B", "Delta1", "z1", "z2", "theta1", "theta2", "J"})
        CHECK(j.contains(key));
}

TEST_SUITE_END();
