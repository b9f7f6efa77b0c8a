#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "monopole/geometry.hpp"

namespace monopole {

struct VerifyOptions {
    std::uint64_t seed = 12345;
    bool quick = false;       ///< reduced grids and sample counts
    std::string fault;        ///< named fault injection, e.g. "lambda-quarter"
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  ///< deterministic one-line summary with key numbers
    double elapsed_s = 0.0;
};

/// Run the full verification suite (one check per acceptance criterion).
std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& opts);

bool all_pass(const std::vector<CheckResult>& results);

/// Machine-readable report; timing is deliberately excluded so the bytes are
/// reproducible for a fixed seed.
nlohmann::ordered_json verify_report(const std::vector<CheckResult>& results,
                                     const VerifyOptions& opts);

/// Independent parallel-transport oracle: integrates the transport equation
/// xi' = i A(gamma') xi along the sampled loop with a fixed-step RK4 on every
/// segment (patch handling identical to holonomy, numerics independent).
std::complex<double> transport_ode_oracle(const LoopPath& loop,
                                          const BundleData& bundle,
                                          int substeps_per_segment = 64);

}  // namespace monopole
