#pragma once

#include <vector>

#include "monopole/symbols.hpp"

namespace monopole {

/// Integration controls for the magnetic geodesic flow.
struct FlowConfig {
    double B = 0.5;          ///< classical magnetic charge
    double abs_tol = 1e-12;  ///< integrator absolute tolerance
    double rel_tol = 1e-12;  ///< integrator relative tolerance
    double t_max = 10.0;     ///< time horizon (may be negative)
    double output_dt = 0.0;  ///< extra output grid spacing, 0 = internal steps only
    double pole_guard = kPoleGuard;
};

struct TrajectorySample {
    double t;
    PhasePoint point;
    double energy;  ///< value of H, conserved along the flow
    double i2;      ///< value of p_phi - B cos(theta), conserved along the flow
};

/// Kinetic Hamiltonian p_theta^2 + p_phi^2 / sin^2(theta).
double hamiltonian(const PhasePoint& pt, double pole_guard = kPoleGuard);

/// Axial first integral I2 = p_phi - B cos(theta).
double i2_at(const PhasePoint& pt, double B);

/// Right-hand side of the magnetic geodesic flow with respect to the twisted
/// symplectic form dp^dx + B sin(theta) dtheta^dphi:
///   theta'  =  2 p_theta
///   phi'    =  2 p_phi / sin^2(theta)
///   p_theta' =  (2 cos/sin^3) p_phi^2 + (2B/sin) p_phi
///   p_phi'  = -2 B sin(theta) p_theta.
/// This is the unique vector field with theta',phi' = dH/dp that conserves
/// both H and I2.
Tangent flow_rhs(const PhasePoint& pt, double B,
                 double pole_guard = kPoleGuard);

/// Adaptive 5(4) Dormand-Prince integration over [0, t_max]. Samples are
/// recorded at every accepted step, plus at multiples of output_dt when
/// positive (steps are clamped to land on the grid exactly). Aborts with
/// PoleCrossingError if the trajectory enters the pole guard and with
/// StepFailureError if the step size underflows.
std::vector<TrajectorySample> integrate(const PhasePoint& pt0,
                                        const FlowConfig& cfg);

struct ClosureResult {
    double period;        ///< first-return time
    double return_error;  ///< phase-space distance to the initial point
};

/// Detects the first return of the trajectory to its initial point: candidate
/// times are the crossings of the section phi = phi(0) in the initial
/// direction of phi, refined by bisection; the first crossing that lands near
/// the initial point is reported. Throws NoReturnError if none is found
/// before t_max.
ClosureResult closure_check(const PhasePoint& pt0, const FlowConfig& cfg);

/// Largest deviations of H and I2 from their initial values over a sample set.
struct ConservationDrift {
    double energy;
    double i2;
};
ConservationDrift max_drift(const std::vector<TrajectorySample>& samples);

}  // namespace monopole
