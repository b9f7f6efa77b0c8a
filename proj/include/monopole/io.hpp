#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "monopole/canonical.hpp"
#include "monopole/dynamics.hpp"
#include "monopole/tori.hpp"

namespace monopole {

/// Shortest-width decimal with 17 significant digits (value-preserving).
std::string format_g17(double x);

nlohmann::ordered_json torus_record(const InvariantTorus& torus);
nlohmann::ordered_json section_record(const SectionGrid& section);

/// CSV schema: t,theta,phi,p_theta,p_phi,H,I2
void write_trajectory_csv(std::ostream& os,
                          const std::vector<TrajectorySample>& samples);

/// CSV schema: N,j,lambda_hat,lambda_exact,delta,mult_hat,mult_exact
void write_level_table_csv(std::ostream& os, int N, int j_max);

/// Exact spectrum side by side with the finite-difference oracle.
std::vector<SpectralLine> spectral_comparison(int N, int j_max,
                                              int grid_points);

/// CSV schema: N,j,lambda_exact,lambda_numeric,abs_err,mult_exact,mult_numeric
void write_numeric_comparison_csv(std::ostream& os, int N, int j_max,
                                  int grid_points);

/// CSV schema: N,j,k1,global_residual,plateau_residual
void write_residual_scan_csv(std::ostream& os, const std::vector<int>& Ns,
                             int j, int n_theta, int n_phi);

}  // namespace monopole
