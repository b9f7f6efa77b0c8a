#include "monopole/geometry.hpp"

#include <cmath>

namespace monopole {

MetricSample metric_at(double theta, double pole_guard) {
    if (!(theta > pole_guard && theta < kPi - pole_guard))
        throw PoleProximityError("metric_at: theta too close to a pole");
    double s = std::sin(theta);
    return MetricSample{theta, 1.0, s * s, s};
}

double potential_at(Patch patch, const BundleData& bundle, double theta) {
    double nb = bundle.effective_charge();
    if (patch == Patch::North) {
        if (!(theta >= 0.0 && theta < kPi))
            throw PatchDomainError("potential_at: theta outside the north patch [0, pi)");
        return nb * (1.0 - std::cos(theta));
    }
    if (!(theta > 0.0 && theta <= kPi))
        throw PatchDomainError("potential_at: theta outside the south patch (0, pi]");
    return -nb * (1.0 + std::cos(theta));
}

std::complex<double> transition_at(const BundleData& bundle, double phi) {
    return std::polar(1.0, 2.0 * bundle.effective_charge() * phi);
}

namespace {

// Transition phase picked up when the running trivialization changes at
// longitude phi (unwrapped): switching North->South contributes -2NB*phi,
// the reverse +2NB*phi.
double switch_phase(Patch from, Patch to, double nb, double phi) {
    if (from == to) return 0.0;
    return (from == Patch::North ? -1.0 : +1.0) * 2.0 * nb * phi;
}

}  // namespace

std::complex<double> holonomy(const LoopPath& loop, const BundleData& bundle,
                              double pole_guard) {
    const auto& pts = loop.samples;
    if (!bundle.charge_quantized())
        throw std::invalid_argument(
            "holonomy requires a quantized charge (2B must be an integer)");
    if (!loop.closed || pts.size() < 3)
        throw OpenLoopError("holonomy: loop must be closed with at least two segments");
    if (std::abs(pts.front()[0] - pts.back()[0]) > 1e-9 ||
        std::abs(wrap_pi(pts.front()[1] - pts.back()[1])) > 1e-9)
        throw OpenLoopError("holonomy: endpoints of a closed loop must coincide");
    for (const auto& q : pts)
        if (!(q[0] > pole_guard && q[0] < kPi - pole_guard))
            throw PoleCrossingError("holonomy: loop sample within the pole guard");

    double nb = bundle.effective_charge();
    auto a_phi = [&](Patch p, double th) {
        return p == Patch::North ? nb * (1.0 - std::cos(th))
                                 : -nb * (1.0 + std::cos(th));
    };

    Patch start = pts.front()[0] <= kPi / 2.0 ? Patch::North : Patch::South;
    Patch cur = start;
    double phase = 0.0;   // accumulated line integral of A_phi dphi
    double trans = 0.0;   // accumulated transition phases
    double phi_u = pts.front()[1];  // unwrapped longitude along the loop

    // Composite trapezoid over the sampled loop, each segment split at the
    // equator when it changes hemisphere.
    auto add_segment = [&](double th_a, double phi_a, double th_b, double phi_b) {
        // both endpoints lie in one closed hemisphere by construction
        Patch side = std::max(th_a, th_b) <= kPi / 2.0 ? Patch::North : Patch::South;
        if (side != cur) {
            trans += switch_phase(cur, side, nb, phi_a);
            cur = side;
        }
        phase += 0.5 * (a_phi(cur, th_a) + a_phi(cur, th_b)) * (phi_b - phi_a);
    };

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double th_a = pts[i][0], th_b = pts[i + 1][0];
        double dphi = wrap_pi(pts[i + 1][1] - pts[i][1]);
        double phi_a = phi_u, phi_b = phi_u + dphi;
        bool straddles = (th_a - kPi / 2.0) * (th_b - kPi / 2.0) < 0.0;
        if (straddles) {
            double f = (kPi / 2.0 - th_a) / (th_b - th_a);
            double phi_m = phi_a + f * (phi_b - phi_a);
            add_segment(th_a, phi_a, kPi / 2.0, phi_m);
            add_segment(kPi / 2.0, phi_m, th_b, phi_b);
        } else {
            add_segment(th_a, phi_a, th_b, phi_b);
        }
        phi_u = phi_b;
    }
    if (cur != start) trans += switch_phase(cur, start, nb, phi_u);

    return std::polar(1.0, phase + trans);
}

LoopPath latitude_loop(double theta, int n_segments) {
    LoopPath loop;
    loop.closed = true;
    loop.samples.reserve(n_segments + 1);
    for (int i = 0; i <= n_segments; ++i)
        loop.samples.push_back({theta, wrap_two_pi(kTwoPi * i / n_segments)});
    return loop;
}

double cap_flux(const BundleData& bundle, double theta) {
    return kTwoPi * bundle.effective_charge() * (1.0 - std::cos(theta));
}

}  // namespace monopole
