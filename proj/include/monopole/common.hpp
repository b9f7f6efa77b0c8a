#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace monopole {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Guard half-width around the coordinate poles theta = 0, pi where the
/// spherical chart degenerates.
inline constexpr double kPoleGuard = 1e-8;

/// Exclusion half-width around caustic latitudes for density and amplitude
/// evaluation (the momentum branch vanishes there).
inline constexpr double kCausticGuard = 1e-6;

struct PoleProximityError : std::domain_error {
    using std::domain_error::domain_error;
};
struct PatchDomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct EmptyTorusError : std::domain_error {
    using std::domain_error::domain_error;
};
struct OutOfAnnulusError : std::domain_error {
    using std::domain_error::domain_error;
};
struct CausticSingularityError : std::domain_error {
    using std::domain_error::domain_error;
};
struct InvalidModeError : std::domain_error {
    using std::domain_error::domain_error;
};
struct OpenLoopError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepFailureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoReturnError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Wrap an angle into [0, 2*pi).
inline double wrap_two_pi(double phi) {
    double w = std::fmod(phi, kTwoPi);
    return w < 0.0 ? w + kTwoPi : w;
}

/// Signed angular difference wrapped into (-pi, pi].
inline double wrap_pi(double d) {
    double w = std::fmod(d, kTwoPi);
    if (w <= -kPi) w += kTwoPi;
    if (w > kPi) w -= kTwoPi;
    return w;
}

/// Distance of x to the nearest integer.
inline double dist_to_integer(double x) {
    return std::abs(x - std::round(x));
}

/// Deterministic uniform deviate in [0,1); bit-stable across platforms,
/// unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform deviate in [a,b).
inline double uniform_in(std::mt19937_64& rng, double a, double b) {
    return a + (b - a) * uniform01(rng);
}

}  // namespace monopole
