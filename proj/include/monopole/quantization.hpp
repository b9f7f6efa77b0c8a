#pragma once

#include <vector>

#include "monopole/tori.hpp"

namespace monopole {

/// A torus satisfying both quantization conditions at charge B = 1/2:
/// periodicity in phi (N(P + 1/2) integer) and the theta-cycle action rule
/// N*J/(2 pi) - 1/2 integer, the half coming from the Maslov index 2 of the
/// theta cycle (two caustic crossings).
struct QuantizedLevel {
    int N = 1;
    int j = 0;
    int k1_min = 0;  ///< admissible azimuthal integers span [k1_min, k1_max]
    int k1_max = 0;
    long long lambda_hat_times4 = 0;  ///< 4 * lambda_hat, exact
    double E = 0.0;                   ///< lambda_hat / N^2
    int multiplicity = 0;             ///< N + 2j + 1
    int maslov_theta_cycle = 2;

    double lambda_hat() const { return 0.25 * static_cast<double>(lambda_hat_times4); }
    bool k1_admissible(int k1) const { return k1 >= k1_min && k1 <= k1_max; }
};

/// Axial integral value selected by the phi-periodicity condition, k1/N - 1/2.
double periodicity_P(int N, int k1);

/// Almost eigenvalue j(j+1) + (N/2)(2j+1) + 1/4.
double lambda_hat(int N, int j);

/// Multiplicity N + 2j + 1 of the almost eigenvalue.
int multiplicity_hat(int N, int j);

/// Resolve the level selected by the pair of quantization integers (k1, k2):
/// j = -k1 + k2 for k1 < 0, j = k2 for 0 <= k1 < N, j = k1 - N + k2 otherwise.
QuantizedLevel solve_level(int N, int k1, int k2);

/// Level record for given (N, j).
QuantizedLevel level_for(int N, int j);

struct QuantizationResidual {
    double action;       ///< distance of N*J/(2 pi) - 1/2 to the nearest integer
    double periodicity;  ///< distance of N*(P + 1/2) to the nearest integer
};

/// Both residuals vanish exactly when the torus is quantized (B must be 1/2).
QuantizationResidual quantization_residual(const InvariantTorus& torus, int N);

/// All levels j = 0..j_max for fixed N, sorted by lambda_hat.
std::vector<QuantizedLevel> enumerate_levels(int N, int j_max);

}  // namespace monopole
