#include "monopole/symbols.hpp"

#include <cmath>

namespace monopole {

namespace {

void check_interior(const PhasePoint& pt, double guard) {
    if (!(pt.theta > guard && pt.theta < kPi - guard))
        throw PoleProximityError("phase point too close to a coordinate pole");
}

}  // namespace

double h0_at(const PhasePoint& pt, Patch patch, const BundleData& bundle,
             double pole_guard) {
    check_interior(pt, pole_guard);
    double s = std::sin(pt.theta);
    double a = potential_at(patch, bundle, pt.theta);
    double kin_phi = (pt.p_phi - a) / s;
    return pt.p_theta * pt.p_theta + kin_phi * kin_phi;
}

std::complex<double> h1_at(const PhasePoint& pt, Patch patch,
                           const BundleData& bundle, double pole_guard) {
    check_interior(pt, pole_guard);
    (void)potential_at(patch, bundle, pt.theta);  // patch domain check
    // theta term: (1/i)(1/sin) d_theta[sin * p_theta]; the phi term vanishes
    // because no coefficient depends on phi.
    double cot = std::cos(pt.theta) / std::sin(pt.theta);
    return std::complex<double>(0.0, -cot * pt.p_theta);
}

std::complex<double> subprincipal_at(const PhasePoint& pt, Patch patch,
                                     const BundleData& bundle,
                                     double pole_guard) {
    // d^2 h0 / dtheta dp_theta = -2 dA_theta/dtheta = 0 and
    // d^2 h0 / dphi dp_phi = 0 (axisymmetric gauge), so the subprincipal
    // symbol reduces to the first-order symbol.
    return h1_at(pt, patch, bundle, pole_guard);
}

std::complex<double> gamma0_at(const PhasePoint& pt, Patch patch,
                               const BundleData& bundle, double pole_guard) {
    check_interior(pt, pole_guard);
    (void)potential_at(patch, bundle, pt.theta);
    double s = std::sin(pt.theta);
    double c = std::cos(pt.theta);
    // volume-weighted divergence piece: (1/sqrt g) d_theta[sqrt g] g^{thth} p_theta
    double div_piece = (c / s) * pt.p_theta;
    // (1/4) X_{H0}(ln|g|) with ln|g| = 2 ln sin(theta):
    // X_{H0}(f) = dH0/dp_theta * df/dtheta for f = f(theta)
    double xh_piece = 0.25 * (2.0 * pt.p_theta) * (2.0 * c / s);
    return std::complex<double>(div_piece - xh_piece, 0.0);
}

PhasePoint gauge_shift(const PhasePoint& pt, Patch patch,
                       const BundleData& bundle, MapDirection dir) {
    double a = potential_at(patch, bundle, pt.theta);
    PhasePoint out = pt;
    out.p_phi += (dir == MapDirection::Forward) ? -a : +a;
    return out;
}

double omega0_value(const Tangent& v, const Tangent& w) {
    return (v[2] * w[0] - v[0] * w[2]) + (v[3] * w[1] - v[1] * w[3]);
}

double twisted_omega_value(const PhasePoint& pt, const BundleData& bundle,
                           const Tangent& v, const Tangent& w) {
    double f = bundle.effective_charge() * std::sin(pt.theta);
    return omega0_value(v, w) + f * (v[0] * w[1] - v[1] * w[0]);
}

}  // namespace monopole
