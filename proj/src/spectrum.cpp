#include "monopole/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace monopole {

double lambda_exact(int N, int j) {
    if (N < 1) throw std::invalid_argument("N must be a positive integer");
    if (j < 0) throw std::invalid_argument("j must be non-negative");
    return static_cast<double>(j) * (j + 1) + 0.5 * N * (2 * j + 1);
}

int multiplicity_exact(int N, int j) {
    if (N < 1) throw std::invalid_argument("N must be a positive integer");
    if (j < 0) throw std::invalid_argument("j must be non-negative");
    return N + 2 * j + 1;
}

double radial_potential(int N, double B, int m, double theta, Patch patch) {
    double s = std::sin(theta);
    double defect = patch == Patch::North
                        ? m - N * B * (1.0 - std::cos(theta))
                        : m + N * B * (1.0 + std::cos(theta));
    return defect * defect / (s * s);
}

Tridiagonal radial_matrix(int N, double B, int m, const RadialGrid& grid,
                          Patch patch) {
    const int n = grid.n_points;
    const double h = grid.spacing();
    Tridiagonal T;
    T.diag.resize(n);
    T.off.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        double th = grid.theta(i);
        double s = std::sin(th);
        double flux_lo = std::sin(i * h);        // vanishes at the poles,
        double flux_hi = std::sin((i + 1) * h);  // closing the boundary
        T.diag[i] =
            (flux_lo + flux_hi) / (h * h * s) + radial_potential(N, B, m, th, patch);
        if (i + 1 < n)
            T.off[i] = -flux_hi / (h * h * std::sqrt(s * std::sin(grid.theta(i + 1))));
    }
    return T;
}

int sturm_count_below(const Tridiagonal& T, double x) {
    const double pivmin =
        std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < T.size(); ++i) {
        double b2 = i > 0 ? T.off[i - 1] * T.off[i - 1] : 0.0;
        d = T.diag[i] - x - b2 / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigs(const Tridiagonal& T, int count) {
    if (count < 1 || count > T.size())
        throw std::invalid_argument("eigenvalue count out of range");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < T.size(); ++i) {
        double r = (i > 0 ? std::abs(T.off[i - 1]) : 0.0) +
                   (i + 1 < T.size() ? std::abs(T.off[i]) : 0.0);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    double tol = 8.0 * std::numeric_limits<double>::epsilon() *
                 std::max({1.0, std::abs(lo), std::abs(hi)});

    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) {
        double a = lo, b = hi;
        for (int it = 0; it < 200 && (b - a) > tol; ++it) {
            double m = 0.5 * (a + b);
            (sturm_count_below(T, m) >= k + 1 ? b : a) = m;
        }
        out[k] = 0.5 * (a + b);
        if (k > 0) out[k] = std::max(out[k], out[k - 1]);
    }
    return out;
}

NumericSpectrum numeric_spectrum(int N, double B, int m_lo, int m_hi,
                                 const RadialGrid& grid, int count_per_m) {
    if (m_hi < m_lo) throw std::invalid_argument("empty mode range");
    NumericSpectrum out;
    if (grid.coarse())
        out.warnings.push_back("radial grid coarser than 16 points");

    struct Entry {
        double value;
        int mode;
        double err_est;
    };
    std::vector<Entry> entries;
    RadialGrid coarse = RadialGrid::uniform(std::max(8, grid.n_points / 2));
    for (int m = m_lo; m <= m_hi; ++m) {
        auto fine = lowest_eigs(radial_matrix(N, B, m, grid), count_per_m);
        auto half = lowest_eigs(radial_matrix(N, B, m, coarse), count_per_m);
        for (int k = 0; k < count_per_m; ++k) {
            double est = std::abs(fine[k] - half[k]) / 3.0;  // order-2 Richardson
            entries.push_back({fine[k], m, est});
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.value < b.value; });

    // The discretization error varies strongly with the mode inside one
    // degenerate family, so a cluster admits a candidate within ten times the
    // largest error estimate seen so far on either side.
    double cluster_first = 0.0;
    double cluster_est = 0.0;
    for (const auto& e : entries) {
        out.values.emplace_back(e.value, e.mode);
        double tol = 10.0 * std::max({e.err_est, cluster_est,
                                      1e-12 * (1.0 + std::abs(e.value))});
        if (out.clusters.empty() ||
            e.value - out.clusters.back().mean > tol) {
            EigCluster c;
            c.mean = e.value;
            c.size = 1;
            c.modes = {e.mode};
            out.clusters.push_back(c);
            cluster_first = e.value;
            cluster_est = e.err_est;
        } else {
            auto& c = out.clusters.back();
            c.mean = (c.mean * c.size + e.value) / (c.size + 1);
            c.size += 1;
            c.modes.push_back(e.mode);
            c.spread = e.value - cluster_first;
            cluster_est = std::max(cluster_est, e.err_est);
        }
    }
    for (auto& c : out.clusters) {
        std::sort(c.modes.begin(), c.modes.end());
        c.touches_mode_boundary =
            c.modes.front() == m_lo || c.modes.back() == m_hi;
        if (c.touches_mode_boundary)
            out.warnings.push_back(
                "cluster near " + std::to_string(c.mean) +
                " touches the mode-range boundary; multiplicity may be "
                "incomplete");
    }
    return out;
}

}  // namespace monopole
