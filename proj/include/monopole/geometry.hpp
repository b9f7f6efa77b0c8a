#pragma once

#include <array>
#include <complex>
#include <vector>

#include "monopole/common.hpp"

namespace monopole {

/// The two trivializing charts of the monopole bundle over the unit sphere.
/// North covers theta < pi (regular at the north pole), South covers
/// theta > 0 (regular at the south pole).
enum class Patch { North, South };

inline const char* patch_name(Patch p) {
    return p == Patch::North ? "north" : "south";
}

/// Round-sphere metric data at a latitude, in spherical coordinates
/// g = dtheta^2 + sin^2(theta) dphi^2.
struct MetricSample {
    double theta;
    double g_thth;    ///< = 1
    double g_phph;    ///< = sin^2 theta
    double sqrt_det;  ///< = sin theta
};

/// Monopole bundle description: base charge B (half-integer for an honest
/// bundle), tensor power N, and the resulting effective charge N*B.
struct BundleData {
    double B = 0.5;
    int N = 1;

    double effective_charge() const { return N * B; }
    /// First Chern number of the N-th power, 2*N*B.
    double chern_number() const { return 2.0 * N * B; }
    /// Whether 2B is an integer (the field-flux quantization condition).
    bool charge_quantized(double tol = 1e-12) const {
        return dist_to_integer(2.0 * B) <= tol;
    }
};

/// A sampled loop on the sphere, vertices (theta, phi) joined by segments
/// that are linear in the coordinates. Segments must subtend |dphi| < pi.
struct LoopPath {
    std::vector<std::array<double, 2>> samples;
    bool closed = false;
};

MetricSample metric_at(double theta, double pole_guard = kPoleGuard);

/// A_phi component of the connection form of L^N on the given patch
/// (A_theta vanishes identically):
///   North:  N*B*(1 - cos theta),   South: -N*B*(1 + cos theta).
double potential_at(Patch patch, const BundleData& bundle, double theta);

/// Transition function from the South to the North trivialization,
/// exp(2i*N*B*phi); north representative = transition * south representative.
std::complex<double> transition_at(const BundleData& bundle, double phi);

/// Holonomy of a closed loop: exp(i * integral of A along the loop), with the
/// running trivialization switched at the equator and the transition factor
/// applied at every switch. Counterclockwise (phi increasing, seen from the
/// north pole) counts as positive circulation.
std::complex<double> holonomy(const LoopPath& loop, const BundleData& bundle,
                              double pole_guard = kPoleGuard);

/// Closed latitude circle theta = const sampled with n segments, traversed
/// once counterclockwise.
LoopPath latitude_loop(double theta, int n_segments);

/// Flux of F = N*B*sin(theta) dtheta^dphi through the polar cap bounded by
/// the latitude circle (closed form 2*pi*N*B*(1-cos theta)).
double cap_flux(const BundleData& bundle, double theta);

}  // namespace monopole
