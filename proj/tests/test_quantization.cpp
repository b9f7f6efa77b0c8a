#include <doctest.h>

#include <cmath>

#include "monopole/quantization.hpp"
#include "monopole/spectrum.hpp"

using namespace monopole;

TEST_SUITE_BEGIN("quantization");

TEST_CASE("periodicity selection of P") {
    CHECK(periodicity_P(10, 5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(periodicity_P(7, 0) == doctest::Approx(-0.5));
    CHECK(periodicity_P(2, 2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(periodicity_P(0, 1), std::invalid_argument);
}

TEST_CASE("level from the quantization integers") {
    auto lvl = solve_level(10, 5, 2);
    CHECK(lvl.j == 2);
    CHECK(lvl.E == doctest::Approx(0.3125).epsilon(1e-15));
    CHECK(lvl.lambda_hat() == doctest::Approx(31.25).epsilon(1e-15));
    CHECK(lvl.multiplicity == 15);
    CHECK(lvl.maslov_theta_cycle == 2);

    CHECK(solve_level(10, -2, 3).j == 5);
    CHECK(solve_level(10, 12, 1).j == 3);
    CHECK_THROWS_AS(solve_level(10, 5, -1), std::invalid_argument);
}

TEST_CASE("almost eigenvalues") {
    CHECK(lambda_hat(10, 2) == doctest::Approx(31.25).epsilon(1e-16));
    CHECK(lambda_hat(1, 0) == doctest::Approx(0.75).epsilon(1e-16));
    CHECK(multiplicity_hat(10, 2) == 15);
    CHECK(multiplicity_hat(1, 0) == 2);
}

TEST_CASE("quarter-shift identity is exact over the full table") {
    for (int N = 1; N <= 64; ++N)
        for (int j = 0; j <= 20; ++j) {
            CHECK(lambda_hat(N, j) - lambda_exact(N, j) == 0.25);
            CHECK(multiplicity_hat(N, j) == multiplicity_exact(N, j));
            auto lvl = level_for(N, j);
            CHECK(lvl.k1_max - lvl.k1_min + 1 == lvl.multiplicity);
        }
}

TEST_CASE("quantization residuals") {
    auto t = build_torus(0.3125, 0.0, 0.5);
    auto q10 = quantization_residual(t, 10);
    CHECK(q10.action < 1e-12);
    CHECK(q10.periodicity < 1e-12);

    auto q7 = quantization_residual(t, 7);
    CHECK(q7.action > 1e-3);
    CHECK(q7.periodicity > 1e-3);

    auto generic = build_torus(0.777, 0.123, 0.5);
    auto qg = quantization_residual(generic, 9);
    CHECK(qg.action + qg.periodicity > 1e-3);
}

TEST_CASE("enumeration") {
    auto lvls = enumerate_levels(1, 2);
    REQUIRE(lvls.size() == 3);
    CHECK(lvls[0].lambda_hat() == doctest::Approx(0.75));
    CHECK(lvls[1].lambda_hat() == doctest::Approx(3.75));
    CHECK(lvls[2].lambda_hat() == doctest::Approx(8.75));
    for (std::size_t i = 1; i < lvls.size(); ++i)
        CHECK(lvls[i].lambda_hat() > lvls[i - 1].lambda_hat());

    // multiplicities sum to the arithmetic series total
    int sum = 0;
    for (const auto& l : enumerate_levels(5, 6)) sum += l.multiplicity;
    int expect = 0;
    for (int j = 0; j <= 6; ++j) expect += 5 + 2 * j + 1;
    CHECK(sum == expect);
}

TEST_CASE("every admissible k1 yields a quantized non-empty torus") {
    for (int N : {1, 2, 5, 10})
        for (int j : {0, 1, 3}) {
            auto lvl = level_for(N, j);
            for (int k1 = lvl.k1_min; k1 <= lvl.k1_max; ++k1) {
                double P = periodicity_P(N, k1);
                CHECK(P * P < lvl.E + 0.25);
                auto torus = build_torus(lvl.E, P, 0.5);
                auto qr = quantization_residual(torus, N);
                CHECK(qr.action < 1e-9);
                CHECK(qr.periodicity < 1e-9);
            }
        }
}

TEST_CASE("round trip through the case mapping") {
    for (int N : {3, 10})
        for (int k1 = -4; k1 <= N + 4; ++k1)
            for (int k2 = 0; k2 <= 5; ++k2) {
                auto lvl = solve_level(N, k1, k2);
                int back;
                if (k1 < 0)
                    back = lvl.j + k1;
                else if (k1 < N)
                    back = lvl.j;
                else
                    back = lvl.j - k1 + N;
                CHECK(back == k2);
                CHECK(lvl.j >= 0);
            }
}

TEST_CASE("no simultaneous periodicity for non-half-integer charge") {
    // both gauge slopes N(P + B) and N(P - B) can be integers only if 2NB is
    // an integer; for irrational B no N admits any P (the closest approach
    // below N = 50 is 29/41 with distance 0.0086)
    double B = std::sqrt(2.0) / 4.0;
    for (int N = 1; N <= 50; ++N)
        CHECK(dist_to_integer(2.0 * N * B) > 5e-3);
}

TEST_SUITE_END();
