#include "monopole/quantization.hpp"

#include <cmath>
#include <stdexcept>

namespace monopole {

namespace {

void check_n(int N) {
    if (N < 1) throw std::invalid_argument("N must be a positive integer");
}

}  // namespace

double periodicity_P(int N, int k1) {
    check_n(N);
    return static_cast<double>(k1) / N - 0.5;
}

double lambda_hat(int N, int j) {
    check_n(N);
    if (j < 0) throw std::invalid_argument("j must be non-negative");
    // 4*lambda_hat = 4j(j+1) + 2N(2j+1) + 1 is an exact integer
    long long q4 = 4LL * j * (j + 1) + 2LL * N * (2 * j + 1) + 1;
    return 0.25 * static_cast<double>(q4);
}

int multiplicity_hat(int N, int j) {
    check_n(N);
    if (j < 0) throw std::invalid_argument("j must be non-negative");
    return N + 2 * j + 1;
}

QuantizedLevel level_for(int N, int j) {
    check_n(N);
    if (j < 0) throw std::invalid_argument("j must be non-negative");
    QuantizedLevel lvl;
    lvl.N = N;
    lvl.j = j;
    lvl.k1_min = -j;
    lvl.k1_max = N + j;
    lvl.lambda_hat_times4 = 4LL * j * (j + 1) + 2LL * N * (2 * j + 1) + 1;
    lvl.E = lvl.lambda_hat() / (static_cast<double>(N) * N);
    lvl.multiplicity = N + 2 * j + 1;
    return lvl;
}

QuantizedLevel solve_level(int N, int k1, int k2) {
    check_n(N);
    if (k2 < 0) throw std::invalid_argument("k2 must be non-negative");
    int j;
    if (k1 < 0)
        j = -k1 + k2;
    else if (k1 < N)
        j = k2;
    else
        j = k1 - N + k2;
    return level_for(N, j);
}

QuantizationResidual quantization_residual(const InvariantTorus& torus,
                                           int N) {
    check_n(N);
    double action = N * complete_integral(torus) / kTwoPi - 0.5;
    double periodicity = N * (torus.P + 0.5);
    return QuantizationResidual{dist_to_integer(action),
                                dist_to_integer(periodicity)};
}

std::vector<QuantizedLevel> enumerate_levels(int N, int j_max) {
    check_n(N);
    std::vector<QuantizedLevel> out;
    out.reserve(j_max + 1);
    for (int j = 0; j <= j_max; ++j) out.push_back(level_for(N, j));
    return out;  // lambda_hat is increasing in j
}

}  // namespace monopole
