#pragma once

#include "monopole/common.hpp"

namespace monopole {

enum class Branch { Plus, Minus };

/// Invariant Lagrangian torus of the magnetic geodesic flow, the joint level
/// set H = E, p_phi - B cos(theta) = P. Its projection to the sphere is the
/// annulus theta2 <= theta <= theta1 bounded by the caustic latitudes, where
/// cos(theta_j) are the roots of the quadratic
///   R(z) = a1 + b1 z + c1 z^2,  z = cos(theta).
struct InvariantTorus {
    double E;  ///< energy
    double P;  ///< axial first-integral value
    double B;  ///< classical magnetic charge

    double a1;            ///< E - P^2
    double b1;            ///< -2 B P
    double c1;            ///< -(E + B^2)
    double discriminant;  ///< b1^2 - 4 a1 c1 = 4 (E^2 + E (B^2 - P^2))

    double z1, z2;          ///< roots of R, z1 <= z2
    double theta1, theta2;  ///< caustic latitudes arccos(z1) >= arccos(z2)

    double annulus_width() const { return theta1 - theta2; }
};

/// Construct the torus; throws EmptyTorusError unless P^2 < E + B^2.
InvariantTorus build_torus(double E, double P, double B);

/// p_phi restricted to the torus, P + B cos(theta).
double p_phi_on(const InvariantTorus& torus, double theta);

/// Momentum branch +-sqrt(E - (P + B cos)^2 / sin^2) on the annulus; vanishes
/// at the caustics, throws OutOfAnnulusError outside.
double p_theta_branch(const InvariantTorus& torus, double theta, Branch branch);

/// Closed-form antiderivative I(theta) of the plus branch, fixed up to an
/// additive constant; only differences and derivatives are meaningful.
/// Arguments of the inverse sines are clamped to [-1, 1] within 1e-12 so the
/// caustic endpoints evaluate exactly.
double action_closed(const InvariantTorus& torus, double theta);

/// Independent quadrature of the same integral from theta2 to theta. The
/// square-root endpoint behavior is removed by the substitution
/// cos(theta) = midpoint + halfwidth * sin(u) before adaptive Simpson.
double action_quad(const InvariantTorus& torus, double theta,
                   double tol = 1e-12);

/// Action of the theta cycle:
///   -pi |P+B| - pi |P-B| + 2 pi sqrt(E + B^2)
/// = twice the increment of action_closed across the annulus.
double complete_integral(const InvariantTorus& torus);

/// Density of the flow-invariant measure dtheta^dphi / (2 |p_theta|) relative
/// to dtheta^dphi. Diverges at the caustics; a guard strip is enforced.
double invariant_density(const InvariantTorus& torus, double theta,
                         double caustic_guard = kCausticGuard);

}  // namespace monopole
