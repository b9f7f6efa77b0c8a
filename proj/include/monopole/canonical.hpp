#pragma once

#include <complex>
#include <vector>

#include "monopole/quantization.hpp"
#include "monopole/spectrum.hpp"
#include "monopole/tori.hpp"

namespace monopole {

/// Smooth plateau window on the torus annulus built from the exp(-1/t)
/// mollifier: support [theta2 + delta, theta1 - delta], identically one on
/// [theta2 + 2 delta, theta1 - 2 delta].
struct CutoffSpec {
    double delta = 0.0;
    static CutoffSpec fraction(const InvariantTorus& torus, double frac = 0.1) {
        return CutoffSpec{frac * torus.annulus_width()};
    }
};

double plateau_cutoff(const InvariantTorus& torus, const CutoffSpec& cutoff,
                      double theta);

/// Phase data of one momentum branch of the torus in one gauge patch. The
/// additive constant tau0 is shared between the patches; the default 0 keeps
/// the inter-patch compatibility exact.
struct EikonalSpec {
    InvariantTorus torus;
    Branch branch = Branch::Plus;
    Patch patch = Patch::North;
    double tau0 = 0.0;
};

/// Eikonal +-I(theta) + (P + B) phi (north) or +-I(theta) + (P - B) phi
/// (south), plus tau0. phi is taken as given (not reduced mod 2 pi).
double eikonal_at(const EikonalSpec& spec, double theta, double phi);

/// Half-density amplitude sqrt(1 / (2 |p_theta| sin theta)): the square root
/// of the invariant torus density relative to the Riemannian area density.
double amplitude_at(const InvariantTorus& torus, double theta,
                    double caustic_guard = kCausticGuard);

/// Almost-eigenfunction section sampled on a (theta, phi) grid, one complex
/// array per gauge patch. In the north gauge the phi dependence is the single
/// Fourier mode exp(i k1 phi); on the overlap
/// values_north = exp(2 i N B phi) values_south holds pointwise.
struct SectionGrid {
    QuantizedLevel level;
    int k1 = 0;
    InvariantTorus torus;
    CutoffSpec cutoff;
    std::vector<double> theta_samples;
    std::vector<double> phi_samples;
    std::vector<std::complex<double>> profile;  ///< theta profile y(theta)
    std::vector<std::complex<double>> values_north;  ///< row-major [i_theta][i_phi]
    std::vector<std::complex<double>> values_south;

    int mode_north() const { return k1; }
    int mode_south() const { return k1 - level.N; }  // k1 - 2NB at B = 1/2
    std::complex<double> north_at(int it, int ip) const {
        return values_north[static_cast<std::size_t>(it) * phi_samples.size() + ip];
    }
    std::complex<double> south_at(int it, int ip) const {
        return values_south[static_cast<std::size_t>(it) * phi_samples.size() + ip];
    }
};

/// Build the quasimode section of the level for azimuthal integer k1:
///   U(theta, phi) = sum_{+-} exp(-+ i pi/4) exp(i N tau_{+-}) a(theta) chi(theta)
/// with equal branch weights and the two-sided turning-point phase offset.
/// Throws InvalidModeError if k1 is outside the admissible range and
/// std::invalid_argument if the cutoff leaves no plateau.
SectionGrid almost_eigenfunction(const QuantizedLevel& level, int k1,
                                 int n_theta, int n_phi,
                                 const CutoffSpec* cutoff = nullptr);

struct ResidualNorms {
    double global = 0.0;   ///< ||(L - lambda_hat) y||_2 / ||y||_2 on the annulus
    double plateau = 0.0;  ///< same norm restricted to the plateau
};

/// Apply the one-dimensional radial operator of Fourier mode k1 to the theta
/// profile by central finite differences on the section's own grid and report
/// the relative residual norms (sin-weighted L2). detune shifts the reference
/// eigenvalue, for control experiments. Throws GridResolutionError when the
/// grid resolves the phase N I(theta) with fewer than 32 points per
/// oscillation.
ResidualNorms residual_norms(const SectionGrid& section, double detune = 0.0);

}  // namespace monopole
