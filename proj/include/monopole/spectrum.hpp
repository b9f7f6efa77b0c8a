#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monopole/geometry.hpp"

namespace monopole {

/// Midpoints of a uniform partition of (0, pi): theta_i = (i + 1/2) pi / n.
/// The staggered grid keeps 1/sin(theta) off the poles and makes the natural
/// boundary closure exact (the flux coefficients vanish at 0 and pi).
struct RadialGrid {
    int n_points;
    double spacing() const { return kPi / n_points; }
    double theta(int i) const { return (i + 0.5) * spacing(); }
    bool coarse() const { return n_points < 16; }
    static RadialGrid uniform(int n) {
        if (n < 2) throw std::invalid_argument("radial grid needs >= 2 points");
        return RadialGrid{n};
    }
};

/// Symmetric tridiagonal matrix, diagonal and first off-diagonal.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  ///< size diag.size() - 1
    int size() const { return static_cast<int>(diag.size()); }
};

/// Exact eigenvalue j(j+1) + (N/2)(2j+1) of the magnetic Laplacian on the
/// sphere at charge N*B with B = 1/2 (tensor power N of the basic bundle).
double lambda_exact(int N, int j);

/// Exact multiplicity N + 2j + 1.
int multiplicity_exact(int N, int j);

/// Effective radial potential of the Fourier mode m on the given patch:
/// north (m - NB(1-cos))^2/sin^2, south (m + NB(1+cos))^2/sin^2.
double radial_potential(int N, double B, int m, double theta, Patch patch);

/// Second-order finite-difference discretization of the radial operator
///   -(1/sin) d/dtheta (sin d/dtheta) + radial_potential,
/// symmetrized by folding sqrt(sin) into the unknowns.
Tridiagonal radial_matrix(int N, double B, int m, const RadialGrid& grid,
                          Patch patch = Patch::North);

/// Number of eigenvalues strictly below x (Sturm sequence sign count).
int sturm_count_below(const Tridiagonal& T, double x);

/// The count smallest eigenvalues by bisection on the Sturm count; output is
/// monotone non-decreasing and each value is certified by its sign count.
std::vector<double> lowest_eigs(const Tridiagonal& T, int count);

/// One row of the exact-vs-quasiclassical comparison table; the numeric
/// fields are filled when the finite-difference oracle has been run.
struct SpectralLine {
    int N = 1;
    int j = 0;
    double lambda_exact = 0.0;
    double lambda_hat = 0.0;  ///< always lambda_exact + 1/4
    int mult = 0;
    int mult_numeric = 0;
    std::optional<double> lambda_numeric;
    std::optional<double> numeric_error;
};

struct EigCluster {
    double mean = 0.0;
    double spread = 0.0;
    int size = 0;
    std::vector<int> modes;   ///< Fourier indices contributing to the cluster
    bool touches_mode_boundary = false;
};

struct NumericSpectrum {
    std::vector<std::pair<double, int>> values;  ///< (eigenvalue, mode), sorted
    std::vector<EigCluster> clusters;
    std::vector<std::string> warnings;
};

/// Collect the count_per_m lowest eigenvalues of every Fourier mode in
/// [m_lo, m_hi] and group near-degenerate values; the grouping tolerance is
/// ten times the per-eigenvalue discretization error estimated from a
/// half-resolution companion solve.
NumericSpectrum numeric_spectrum(int N, double B, int m_lo, int m_hi,
                                 const RadialGrid& grid, int count_per_m);

}  // namespace monopole
