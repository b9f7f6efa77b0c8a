// Command-line front end: spectrum tables, verification suite, trajectories,
// torus summaries, quasimode sections, holonomy evaluation.

#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "monopole/canonical.hpp"
#include "monopole/dynamics.hpp"
#include "monopole/io.hpp"
#include "monopole/quantization.hpp"
#include "monopole/spectrum.hpp"
#include "monopole/verify.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kCheckFailure = 1,
    kValidation = 2,
    kConvergence = 3,
    kIo = 4,
};

// Writes to the path when given, otherwise to stdout.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::ios_base::failure("cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        if (file_.is_open()) {
            file_.flush();
            if (!file_) throw std::ios_base::failure("write failed");
        }
    }

private:
    std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
    using namespace monopole;

    CLI::App app{"Semiclassical toolkit for the magnetic monopole on the sphere"};
    app.require_subcommand(1);
    app.fallthrough();  // parent options may follow the subcommand
    app.set_config("--config", "", "read options from an INI file; flags override");
    std::string output;
    app.add_option("-o,--output", output, "output file (default: stdout)")
        ->capture_default_str();

    // ---- spectrum ----------------------------------------------------------
    auto* sp = app.add_subcommand("spectrum",
                                  "exact vs almost eigenvalue table");
    int sp_N = 1, sp_jmax = 5, sp_grid = 2000;
    bool sp_numeric = false;
    sp->add_option("--N", sp_N, "tensor power of the bundle")->required()
        ->check(CLI::Range(1, 1 << 20));
    sp->add_option("--jmax", sp_jmax, "largest level index")
        ->check(CLI::NonNegativeNumber);
    sp->add_flag("--numeric", sp_numeric,
                 "append the finite-difference oracle comparison");
    sp->add_option("--grid", sp_grid, "radial grid points for --numeric");

    // ---- verify ------------------------------------------------------------
    auto* ve = app.add_subcommand("verify", "run the verification suite");
    VerifyOptions vopts;
    std::string scale = "full";
    ve->add_option("--seed", vopts.seed, "seed for randomized checks")
        ->capture_default_str();
    ve->add_option("--scale", scale, "full|quick")
        ->check(CLI::IsMember({"full", "quick"}));
    ve->add_option("--fault", vopts.fault,
                   "inject a named fault (self-test), e.g. lambda-quarter");

    // ---- flow --------------------------------------------------------------
    auto* fl = app.add_subcommand("flow", "integrate a trajectory, CSV output");
    double fl_theta = kPi / 2, fl_phi = 0.0, fl_pt = 0.0, fl_pp = 1.0;
    FlowConfig fl_cfg;
    fl->add_option("--theta", fl_theta)->required();
    fl->add_option("--phi", fl_phi);
    fl->add_option("--ptheta", fl_pt)->required();
    fl->add_option("--pphi", fl_pp)->required();
    fl->add_option("--B", fl_cfg.B, "magnetic charge")->capture_default_str();
    fl->add_option("--tmax", fl_cfg.t_max)->capture_default_str();
    fl->add_option("--dt", fl_cfg.output_dt, "output grid spacing");
    fl->add_option("--abs-tol", fl_cfg.abs_tol)->capture_default_str();
    fl->add_option("--rel-tol", fl_cfg.rel_tol)->capture_default_str();
    bool fl_closure = false;
    fl->add_flag("--closure", fl_closure, "report first-return period instead");

    // ---- torus -------------------------------------------------------------
    auto* to = app.add_subcommand("torus", "invariant torus summary, JSON");
    double to_E = 0.3125, to_P = 0.0, to_B = 0.5;
    to->add_option("--E", to_E)->required();
    to->add_option("--P", to_P)->required();
    to->add_option("--B", to_B)->capture_default_str();

    // ---- quasimode ---------------------------------------------------------
    auto* qm = app.add_subcommand(
        "quasimode", "almost-eigenfunction residual scan and section");
    std::vector<int> qm_N{32};
    int qm_j = 2;
    int qm_k1 = std::numeric_limits<int>::min();
    int qm_ntheta = 4001, qm_nphi = 32;
    std::string qm_section_path;
    qm->add_option("--N", qm_N, "tensor power(s); a list gives a residual scan")
        ->required()
        ->delimiter(',');
    qm->add_option("--j", qm_j)->check(CLI::NonNegativeNumber);
    qm->add_option("--k1", qm_k1, "azimuthal integer (default ceil(N/2))");
    qm->add_option("--ntheta", qm_ntheta);
    qm->add_option("--nphi", qm_nphi);
    qm->add_option("--section", qm_section_path,
                   "also write the section grid JSON to this path");

    // ---- holonomy ----------------------------------------------------------
    auto* ho = app.add_subcommand("holonomy", "latitude-loop holonomy, JSON");
    double ho_theta = kPi / 2, ho_B = 0.5;
    int ho_N = 1, ho_segments = 4000;
    ho->add_option("--theta", ho_theta)->required();
    ho->add_option("--B", ho_B)->capture_default_str();
    ho->add_option("--N", ho_N)->capture_default_str();
    ho->add_option("--segments", ho_segments)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        OutputSink sink(output);
        std::ostream& os = sink.stream();

        if (*sp) {
            write_level_table_csv(os, sp_N, sp_jmax);
            if (sp_numeric) write_numeric_comparison_csv(os, sp_N, sp_jmax, sp_grid);
        } else if (*ve) {
            vopts.quick = scale == "quick";
            auto results = run_acceptance_checks(vopts);
            os << verify_report(results, vopts).dump(2) << '\n';
            sink.finish();
            for (const auto& r : results)
                std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " ("
                          << format_g17(r.elapsed_s) << " s)\n";
            return all_pass(results) ? kOk : kCheckFailure;
        } else if (*fl) {
            PhasePoint pt{fl_theta, fl_phi, fl_pt, fl_pp};
            if (fl_closure) {
                auto res = closure_check(pt, fl_cfg);
                os << nlohmann::ordered_json{{"period", res.period},
                                             {"return_error", res.return_error}}
                          .dump(2)
                   << '\n';
            } else {
                write_trajectory_csv(os, integrate(pt, fl_cfg));
            }
        } else if (*to) {
            os << torus_record(build_torus(to_E, to_P, to_B)).dump(2) << '\n';
        } else if (*qm) {
            os << "N,j,k1,global_residual,plateau_residual\n";
            for (int N : qm_N) {
                int k1 = qm_k1 == std::numeric_limits<int>::min() ? (N + 1) / 2
                                                                  : qm_k1;
                auto sec = almost_eigenfunction(level_for(N, qm_j), k1,
                                                qm_ntheta, qm_nphi);
                auto r = residual_norms(sec);
                os << N << ',' << qm_j << ',' << k1 << ','
                   << format_g17(r.global) << ',' << format_g17(r.plateau)
                   << '\n';
                if (!qm_section_path.empty() && N == qm_N.back()) {
                    std::ofstream sf(qm_section_path);
                    if (!sf)
                        throw std::ios_base::failure("cannot open " +
                                                     qm_section_path);
                    sf << section_record(sec).dump() << '\n';
                }
            }
        } else if (*ho) {
            BundleData bundle{ho_B, ho_N};
            auto loop = latitude_loop(ho_theta, ho_segments);
            auto h = holonomy(loop, bundle);
            double flux = cap_flux(bundle, ho_theta);
            os << nlohmann::ordered_json{
                      {"theta", ho_theta},
                      {"effective_charge", bundle.effective_charge()},
                      {"re", h.real()},
                      {"im", h.imag()},
                      {"phase", std::arg(h)},
                      {"cap_flux", flux},
                      {"flux_consistency",
                       std::abs(h - std::polar(1.0, flux))}}
                      .dump(2)
               << '\n';
        }
        sink.finish();
        return kOk;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIo;
    } catch (const monopole::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kConvergence;
    } catch (const monopole::StepFailureError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kConvergence;
    } catch (const monopole::NoReturnError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kConvergence;
    } catch (const monopole::PoleCrossingError& e) {
        std::cerr << "integration aborted: " << e.what() << '\n';
        return kConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
}
