#pragma once

#include <array>
#include <complex>

#include "monopole/geometry.hpp"

namespace monopole {

/// Point of the phase space T*S^2 in spherical canonical coordinates.
struct PhasePoint {
    double theta;    ///< in (0, pi)
    double phi;      ///< longitude, radians
    double p_theta;  ///< momentum conjugate to theta
    double p_phi;    ///< momentum conjugate to phi
};

/// Tangent vector of the phase space, components (theta, phi, p_theta, p_phi).
using Tangent = std::array<double, 4>;

enum class MapDirection { Forward, Inverse };

/// Principal symbol of the gauged kinetic operator:
/// (p_theta - A_theta)^2 + (p_phi - A_phi)^2 / sin^2(theta), A from the patch.
double h0_at(const PhasePoint& pt, Patch patch, const BundleData& bundle,
             double pole_guard = kPoleGuard);

/// First-order symbol: the divergence-form term
/// (1/i) (1/sqrt g) d_j [ sqrt(g) g^{jl} (p_l - A_l) ].
std::complex<double> h1_at(const PhasePoint& pt, Patch patch,
                           const BundleData& bundle,
                           double pole_guard = kPoleGuard);

/// Subprincipal symbol: h1 minus half the mixed x/p second derivatives of h0
/// (the mixed terms vanish identically on this metric and gauge).
std::complex<double> subprincipal_at(const PhasePoint& pt, Patch patch,
                                     const BundleData& bundle,
                                     double pole_guard = kPoleGuard);

/// Transport correction scalar of the commutation formula:
///   (1/sqrt g) d_j[sqrt g] g^{jl} (p_l - A_l)  -  (1/4) X_{H0}(ln|g|),
/// which cancels identically on the round sphere (both pieces are evaluated
/// independently so the cancellation is a real numerical check).
std::complex<double> gamma0_at(const PhasePoint& pt, Patch patch,
                               const BundleData& bundle,
                               double pole_guard = kPoleGuard);

/// Gauge symplectomorphism between the canonical and twisted phase spaces:
/// Forward maps (x, p) to (x, p - A(x)), Inverse adds the potential back.
PhasePoint gauge_shift(const PhasePoint& pt, Patch patch,
                       const BundleData& bundle, MapDirection dir);

/// Canonical two-form dp^dx evaluated on a pair of tangent vectors.
double omega0_value(const Tangent& v, const Tangent& w);

/// Twisted two-form dp^dx + N*B*sin(theta) dtheta^dphi at base point pt.
double twisted_omega_value(const PhasePoint& pt, const BundleData& bundle,
                           const Tangent& v, const Tangent& w);

}  // namespace monopole
