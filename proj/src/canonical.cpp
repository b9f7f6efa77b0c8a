#include "monopole/canonical.hpp"

#include <cmath>
#include <stdexcept>

namespace monopole {

namespace {

// C^inf step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double f = std::exp(-1.0 / t);
    double g = std::exp(-1.0 / (1.0 - t));
    return f / (f + g);
}

}  // namespace

double plateau_cutoff(const InvariantTorus& torus, const CutoffSpec& cutoff,
                      double theta) {
    double d = cutoff.delta;
    if (!(d > 0.0)) throw std::invalid_argument("cutoff width must be positive");
    if (!(torus.theta2 + 2.0 * d < torus.theta1 - 2.0 * d))
        throw std::invalid_argument("cutoff too wide: no plateau remains");
    return smooth_step((theta - (torus.theta2 + d)) / d) *
           smooth_step(((torus.theta1 - d) - theta) / d);
}

double eikonal_at(const EikonalSpec& spec, double theta, double phi) {
    double sign = spec.branch == Branch::Plus ? 1.0 : -1.0;
    double slope = spec.patch == Patch::North ? spec.torus.P + spec.torus.B
                                              : spec.torus.P - spec.torus.B;
    return sign * action_closed(spec.torus, theta) + slope * phi + spec.tau0;
}

double amplitude_at(const InvariantTorus& torus, double theta,
                    double caustic_guard) {
    double rho = invariant_density(torus, theta, caustic_guard);
    return std::sqrt(rho / std::sin(theta));
}

SectionGrid almost_eigenfunction(const QuantizedLevel& level, int k1,
                                 int n_theta, int n_phi,
                                 const CutoffSpec* cutoff) {
    if (!level.k1_admissible(k1))
        throw InvalidModeError("k1 outside the admissible range of the level");
    if (n_theta < 8 || n_phi < 4)
        throw std::invalid_argument("section grid too small");

    SectionGrid sec;
    sec.level = level;
    sec.k1 = k1;
    sec.torus = build_torus(level.E, periodicity_P(level.N, k1), 0.5);
    sec.cutoff = cutoff ? *cutoff : CutoffSpec::fraction(sec.torus);
    if (!(sec.cutoff.delta > 0.0 &&
          4.0 * sec.cutoff.delta < sec.torus.annulus_width()))
        throw std::invalid_argument("cutoff too wide: no plateau remains");

    const int N = level.N;
    const double th2 = sec.torus.theta2, th1 = sec.torus.theta1;
    const double h = (th1 - th2) / (n_theta - 1);
    sec.theta_samples.resize(n_theta);
    sec.phi_samples.resize(n_phi);
    for (int i = 0; i < n_theta; ++i) sec.theta_samples[i] = th2 + i * h;
    for (int p = 0; p < n_phi; ++p) sec.phi_samples[p] = kTwoPi * p / n_phi;

    const std::complex<double> c_plus = std::polar(1.0, -kPi / 4.0);
    const std::complex<double> c_minus = std::polar(1.0, +kPi / 4.0);

    sec.profile.assign(n_theta, {0.0, 0.0});
    for (int i = 0; i < n_theta; ++i) {
        double th = sec.theta_samples[i];
        double chi = plateau_cutoff(sec.torus, sec.cutoff, th);
        if (chi == 0.0) continue;  // outside the support; skip the caustics
        double amp = amplitude_at(sec.torus, th) * chi;
        double phase = N * action_closed(sec.torus, th);
        sec.profile[i] = amp * (c_plus * std::polar(1.0, phase) +
                                c_minus * std::polar(1.0, -phase));
    }

    const int m_n = sec.mode_north();
    const int m_s = sec.mode_south();
    sec.values_north.resize(static_cast<std::size_t>(n_theta) * n_phi);
    sec.values_south.resize(static_cast<std::size_t>(n_theta) * n_phi);
    for (int i = 0; i < n_theta; ++i) {
        for (int p = 0; p < n_phi; ++p) {
            double phi = sec.phi_samples[p];
            std::size_t idx = static_cast<std::size_t>(i) * n_phi + p;
            sec.values_north[idx] = sec.profile[i] * std::polar(1.0, m_n * phi);
            sec.values_south[idx] = sec.profile[i] * std::polar(1.0, m_s * phi);
        }
    }
    return sec;
}

ResidualNorms residual_norms(const SectionGrid& section, double detune) {
    const auto& th = section.theta_samples;
    const auto& y = section.profile;
    const int n = static_cast<int>(th.size());
    const double h = th[1] - th[0];
    const int N = section.level.N;
    const double lam = section.level.lambda_hat() + detune;

    // Nyquist guard on the oscillation N I'(theta), |I'| <= sqrt(E)
    double min_wavelength = kTwoPi / (N * std::sqrt(section.level.E));
    if (min_wavelength / h < 32.0)
        throw GridResolutionError(
            "section grid resolves fewer than 32 points per oscillation");

    const double th2 = section.torus.theta2, th1 = section.torus.theta1;
    const double d = section.cutoff.delta;
    double num_global = 0.0, den_global = 0.0;
    double num_plateau = 0.0, den_plateau = 0.0;
    for (int i = 0; i < n; ++i) {
        std::complex<double> ym = i > 0 ? y[i - 1] : 0.0;
        std::complex<double> yp = i + 1 < n ? y[i + 1] : 0.0;
        // rows with an empty stencil contribute nothing; skipping them also
        // avoids the singular potential when the annulus touches a pole
        if (y[i] == 0.0 && ym == 0.0 && yp == 0.0) continue;
        double s = std::sin(th[i]);
        double flux_lo = std::sin(th[i] - 0.5 * h);
        double flux_hi = std::sin(th[i] + 0.5 * h);
        std::complex<double> Ly =
            -(flux_hi * (yp - y[i]) - flux_lo * (y[i] - ym)) / (h * h * s) +
            radial_potential(N, 0.5, section.k1, th[i], Patch::North) * y[i];
        std::complex<double> r = Ly - lam * y[i];
        double w = s * h;
        num_global += std::norm(r) * w;
        den_global += std::norm(y[i]) * w;
        if (th[i] >= th2 + 2.0 * d && th[i] <= th1 - 2.0 * d) {
            num_plateau += std::norm(r) * w;
            den_plateau += std::norm(y[i]) * w;
        }
    }
    ResidualNorms out;
    out.global = std::sqrt(num_global / den_global);
    out.plateau = std::sqrt(num_plateau / den_plateau);
    return out;
}

}  // namespace monopole
