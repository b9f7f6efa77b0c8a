#include "monopole/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "monopole/quantization.hpp"
#include "monopole/spectrum.hpp"

namespace monopole {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::ordered_json torus_record(const InvariantTorus& t) {
    return nlohmann::ordered_json{
        {"E", t.E},           {"P", t.P},
        {"B", t.B},           {"Delta1", t.discriminant},
        {"z1", t.z1},         {"z2", t.z2},
        {"theta1", t.theta1}, {"theta2", t.theta2},
        {"J", complete_integral(t)}};
}

nlohmann::ordered_json section_record(const SectionGrid& sec) {
    auto interleave = [](const std::vector<std::complex<double>>& v) {
        std::vector<double> out;
        out.reserve(2 * v.size());
        for (const auto& z : v) {
            out.push_back(z.real());
            out.push_back(z.imag());
        }
        return out;
    };
    nlohmann::ordered_json j;
    j["N"] = sec.level.N;
    j["j"] = sec.level.j;
    j["k1"] = sec.k1;
    j["lambda_hat"] = sec.level.lambda_hat();
    j["torus"] = torus_record(sec.torus);
    j["cutoff"] = {{"delta", sec.cutoff.delta},
                   {"support", {sec.torus.theta2 + sec.cutoff.delta,
                                sec.torus.theta1 - sec.cutoff.delta}},
                   {"plateau", {sec.torus.theta2 + 2.0 * sec.cutoff.delta,
                                sec.torus.theta1 - 2.0 * sec.cutoff.delta}}};
    j["theta"] = sec.theta_samples;
    j["phi"] = sec.phi_samples;
    j["north_re_im"] = interleave(sec.values_north);
    j["south_re_im"] = interleave(sec.values_south);
    return j;
}

void write_trajectory_csv(std::ostream& os,
                          const std::vector<TrajectorySample>& samples) {
    os << "t,theta,phi,p_theta,p_phi,H,I2\n";
    for (const auto& s : samples)
        os << format_g17(s.t) << ',' << format_g17(s.point.theta) << ','
           << format_g17(s.point.phi) << ',' << format_g17(s.point.p_theta)
           << ',' << format_g17(s.point.p_phi) << ',' << format_g17(s.energy)
           << ',' << format_g17(s.i2) << '\n';
}

void write_level_table_csv(std::ostream& os, int N, int j_max) {
    os << "N,j,lambda_hat,lambda_exact,delta,mult_hat,mult_exact\n";
    for (int j = 0; j <= j_max; ++j) {
        double lh = lambda_hat(N, j);
        double le = lambda_exact(N, j);
        os << N << ',' << j << ',' << format_g17(lh) << ',' << format_g17(le)
           << ',' << format_g17(lh - le) << ',' << multiplicity_hat(N, j)
           << ',' << multiplicity_exact(N, j) << '\n';
    }
}

std::vector<SpectralLine> spectral_comparison(int N, int j_max,
                                              int grid_points) {
    auto grid = RadialGrid::uniform(grid_points);
    auto spec =
        numeric_spectrum(N, 0.5, -j_max - 1, N + j_max + 1, grid, j_max + 2);
    std::vector<SpectralLine> lines;
    for (int j = 0; j <= j_max; ++j) {
        SpectralLine line;
        line.N = N;
        line.j = j;
        line.lambda_exact = lambda_exact(N, j);
        line.lambda_hat = lambda_hat(N, j);
        line.mult = multiplicity_exact(N, j);
        for (const auto& c : spec.clusters)
            if (std::abs(c.mean - line.lambda_exact) < 0.5) {
                line.lambda_numeric = c.mean;
                line.numeric_error = std::abs(c.mean - line.lambda_exact);
                line.mult_numeric = c.size;
                break;
            }
        lines.push_back(line);
    }
    return lines;
}

void write_numeric_comparison_csv(std::ostream& os, int N, int j_max,
                                  int grid_points) {
    os << "N,j,lambda_exact,lambda_numeric,abs_err,mult_exact,mult_numeric\n";
    for (const auto& l : spectral_comparison(N, j_max, grid_points)) {
        double nan = std::numeric_limits<double>::quiet_NaN();
        os << l.N << ',' << l.j << ',' << format_g17(l.lambda_exact) << ','
           << format_g17(l.lambda_numeric.value_or(nan)) << ','
           << format_g17(l.numeric_error.value_or(nan)) << ',' << l.mult << ','
           << l.mult_numeric << '\n';
    }
}

void write_residual_scan_csv(std::ostream& os, const std::vector<int>& Ns,
                             int j, int n_theta, int n_phi) {
    os << "N,j,k1,global_residual,plateau_residual\n";
    for (int N : Ns) {
        int k1 = (N + 1) / 2;
        auto level = level_for(N, j);
        auto sec = almost_eigenfunction(level, k1, n_theta, n_phi);
        auto r = residual_norms(sec);
        os << N << ',' << j << ',' << k1 << ',' << format_g17(r.global) << ','
           << format_g17(r.plateau) << '\n';
    }
}

}  // namespace monopole
