#include "monopole/tori.hpp"

#include <cmath>
#include <stdexcept>

namespace monopole {

namespace {

double clamp_asin_arg(double x) {
    if (x > 1.0) {
        if (x > 1.0 + 1e-12)
            throw OutOfAnnulusError("inverse-sine argument out of range");
        return 1.0;
    }
    if (x < -1.0) {
        if (x < -(1.0 + 1e-12))
            throw OutOfAnnulusError("inverse-sine argument out of range");
        return -1.0;
    }
    return x;
}

void check_annulus(const InvariantTorus& t, double theta) {
    if (!(theta >= t.theta2 - 1e-12 && theta <= t.theta1 + 1e-12))
        throw OutOfAnnulusError("theta outside the torus annulus");
}

// Adaptive Simpson with Richardson acceleration.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14)
        return left + right + delta / 15.0;
    if (depth > 60) throw ConvergenceError("adaptive quadrature stalled");
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

// Panels are pre-split before adapting: a single top-level Simpson estimate
// can match its first refinement by accident and hide a narrow feature.
template <class F>
double integrate_simpson(const F& f, double a, double b, double tol,
                         int panels = 32) {
    if (a == b) return 0.0;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        double pa = a + (b - a) * k / panels;
        double pb = a + (b - a) * (k + 1) / panels;
        double fa = f(pa), fb = f(pb), fm = f(0.5 * (pa + pb));
        double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(f, pa, pb, fa, fm, fb, whole, tol / panels, 0);
    }
    return total;
}

}  // namespace

InvariantTorus build_torus(double E, double P, double B) {
    if (!(E > 0.0)) throw std::invalid_argument("torus energy must be positive");
    if (!(P * P < E + B * B))
        throw EmptyTorusError("empty torus: P^2 >= E + B^2");

    InvariantTorus t;
    t.E = E;
    t.P = P;
    t.B = B;
    t.a1 = E - P * P;
    t.b1 = -2.0 * B * P;
    t.c1 = -(E + B * B);
    t.discriminant = t.b1 * t.b1 - 4.0 * t.a1 * t.c1;

    double root = std::sqrt(E * E + E * (B * B - P * P));
    t.z1 = std::max((-B * P - root) / (E + B * B), -1.0);
    t.z2 = std::min((-B * P + root) / (E + B * B), 1.0);
    t.theta1 = std::acos(t.z1);
    t.theta2 = std::acos(t.z2);
    return t;
}

double p_phi_on(const InvariantTorus& torus, double theta) {
    return torus.P + torus.B * std::cos(theta);
}

double p_theta_branch(const InvariantTorus& torus, double theta,
                      Branch branch) {
    check_annulus(torus, theta);
    double s = std::sin(theta);
    double pp = p_phi_on(torus, theta);
    double rad = torus.E - pp * pp / (s * s);
    if (rad < 0.0) rad = 0.0;  // caustic roundoff
    double v = std::sqrt(rad);
    return branch == Branch::Plus ? v : -v;
}

double action_closed(const InvariantTorus& torus, double theta) {
    check_annulus(torus, theta);
    // At the caustics every inverse sine reaches +-pi/2 with infinite slope,
    // so evaluation at the rounded caustic angle loses half the significant
    // digits; snap to the exact endpoint values +-J/4 instead.
    constexpr double snap = 1e-11;
    if (theta >= torus.theta1 - snap)
        return 0.25 * complete_integral(torus);
    if (theta <= torus.theta2 + snap)
        return -0.25 * complete_integral(torus);

    const double a1 = torus.a1, b1 = torus.b1, c1 = torus.c1;
    const double sq = std::sqrt(torus.discriminant);
    const double z = std::cos(theta);
    const double cP = std::abs(torus.P + torus.B);
    const double cM = std::abs(torus.P - torus.B);

    double out = std::sqrt(torus.E + torus.B * torus.B) *
                 std::asin(clamp_asin_arg((2.0 * c1 * z + b1) / sq));
    if (cP > 0.0)
        out += 0.5 * cP *
               std::asin(clamp_asin_arg((2.0 * a1 + b1 + (b1 + 2.0 * c1) * z) /
                                        ((z - 1.0) * sq)));
    if (cM > 0.0)
        out += 0.5 * cM *
               std::asin(clamp_asin_arg((2.0 * a1 - b1 + (b1 - 2.0 * c1) * z) /
                                        ((z + 1.0) * sq)));
    return out;
}

double action_quad(const InvariantTorus& torus, double theta, double tol) {
    check_annulus(torus, theta);
    const double m = 0.5 * (torus.z1 + torus.z2);
    const double w = 0.5 * (torus.z2 - torus.z1);
    const double scale = std::sqrt(torus.E + torus.B * torus.B);
    if (w <= 0.0) return 0.0;

    // cos(theta') = m + w sin(u); theta' = theta2 maps to u = +pi/2 and the
    // integrand sqrt(R)/(1-z^2) * w cos(u) is smooth in u.
    auto g = [&](double u) {
        double z = m + w * std::sin(u);
        double cu = std::cos(u);
        return scale * w * w * cu * cu / (1.0 - z * z);
    };
    double u0 = std::asin(clamp_asin_arg((std::cos(theta) - m) / w));
    return integrate_simpson(g, u0, kPi / 2.0, tol);
}

double complete_integral(const InvariantTorus& torus) {
    return -kPi * std::abs(torus.P + torus.B) -
           kPi * std::abs(torus.P - torus.B) +
           kTwoPi * std::sqrt(torus.E + torus.B * torus.B);
}

double invariant_density(const InvariantTorus& torus, double theta,
                         double caustic_guard) {
    if (!(theta > torus.theta2 + caustic_guard &&
          theta < torus.theta1 - caustic_guard))
        throw CausticSingularityError(
            "density evaluation inside the caustic guard strip");
    return 1.0 / (2.0 * p_theta_branch(torus, theta, Branch::Plus));
}

}  // namespace monopole
