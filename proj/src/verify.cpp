#include "monopole/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>

#include "monopole/canonical.hpp"
#include "monopole/dynamics.hpp"
#include "monopole/io.hpp"
#include "monopole/quantization.hpp"
#include "monopole/spectrum.hpp"
#include "monopole/symbols.hpp"
#include "monopole/tori.hpp"

namespace monopole {

namespace {

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

// Least-squares slope of ln(y) against ln(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

InvariantTorus random_torus(std::mt19937_64& rng, double B) {
    double E = uniform_in(rng, 0.05, 3.0);
    double P = uniform_in(rng, -0.97, 0.97) * std::sqrt(E + B * B);
    return build_torus(E, P, B);
}

// ---------------------------------------------------------------- check 1+2
CheckResult check_correction_term(const VerifyOptions& opts) {
    CheckResult r{"correction_term_identity", false, "", 0.0};
    int n_max = opts.quick ? 32 : 64;
    double fault = opts.fault == "lambda-quarter" ? 0.25 : 0.0;
    double worst = 0.0;
    for (int N = 1; N <= n_max; ++N)
        for (int j = 0; j <= 20; ++j) {
            double delta = (lambda_hat(N, j) - fault) - lambda_exact(N, j);
            worst = std::max(worst, std::abs(delta - 0.25));
        }
    r.pass = worst < 1e-12;
    r.detail = fmt("max |lambda_hat - lambda_exact - 1/4| = %.3e over N<=%d, j<=20",
                   worst, n_max);
    return r;
}

CheckResult check_multiplicity(const VerifyOptions& opts) {
    CheckResult r{"multiplicity_identity", false, "", 0.0};
    int n_max = opts.quick ? 32 : 64;
    bool ok = true;
    for (int N = 1; N <= n_max && ok; ++N)
        for (int j = 0; j <= 20 && ok; ++j)
            ok = multiplicity_hat(N, j) == multiplicity_exact(N, j) &&
                 multiplicity_hat(N, j) == N + 2 * j + 1;
    r.pass = ok;
    r.detail = fmt("exact equality over N<=%d, j<=20: %s", n_max,
                   ok ? "holds" : "violated");
    return r;
}

// ------------------------------------------------------------------ check 3
CheckResult check_spectral_oracle(const VerifyOptions& opts) {
    CheckResult r{"spectral_oracle", false, "", 0.0};
    const int n_fine = opts.quick ? 1200 : 4000;
    const double targets[4] = {1.0, 5.0, 11.0, 19.0};
    const int sizes[4] = {3, 5, 7, 9};

    auto spec = numeric_spectrum(2, 0.5, -4, 6, RadialGrid::uniform(n_fine), 6);
    bool ok = spec.clusters.size() >= 4;
    double worst_rel = 0.0;
    std::string size_note;
    for (int j = 0; j < 4 && ok; ++j) {
        const auto& c = spec.clusters[j];
        double rel = std::abs(c.mean - targets[j]) / targets[j];
        worst_rel = std::max(worst_rel, rel);
        if (rel >= 1e-3) ok = false;
        if (c.size != sizes[j]) {
            ok = false;
            size_note = fmt(" cluster %d size %d != %d", j, c.size, sizes[j]);
        }
    }

    // Richardson order from successive refinements, mode m = 0, j = 0..3
    std::vector<int> ns = opts.quick ? std::vector<int>{600, 1200}
                                     : std::vector<int>{1000, 2000, 4000};
    std::vector<std::vector<double>> errs;
    for (int n : ns) {
        auto eigs = lowest_eigs(radial_matrix(2, 0.5, 0, RadialGrid::uniform(n)), 4);
        std::vector<double> e(4);
        for (int j = 0; j < 4; ++j) e[j] = std::abs(eigs[j] - targets[j]);
        errs.push_back(e);
    }
    double order_lo = 1e300, order_hi = -1e300;
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        for (int j = 0; j < 4; ++j) {
            double order = std::log2(errs[i][j] / errs[i + 1][j]);
            order_lo = std::min(order_lo, order);
            order_hi = std::max(order_hi, order);
        }
    bool order_ok = order_lo > 1.8 && order_hi < 2.2;

    r.pass = ok && order_ok;
    r.detail = fmt("n=%d worst rel err %.3e, cluster sizes %s, order in [%.3f, %.3f]%s",
                   n_fine, worst_rel, ok ? "{3,5,7,9}" : "wrong", order_lo,
                   order_hi, size_note.c_str());
    return r;
}

// ------------------------------------------------------------------ check 4
CheckResult check_action_closed_form(const VerifyOptions& opts) {
    CheckResult r{"action_closed_form", false, "", 0.0};
    std::mt19937_64 rng(opts.seed + 4);
    int n_tori = opts.quick ? 5 : 20;
    int n_theta = opts.quick ? 25 : 100;
    double worst_quad = 0.0, worst_deriv = 0.0;
    for (int k = 0; k < n_tori; ++k) {
        auto t = random_torus(rng, 0.5);
        double w = t.annulus_width();
        for (int i = 0; i < n_theta; ++i) {
            double th = uniform_in(rng, t.theta2 + 0.01 * w, t.theta1 - 0.01 * w);
            double closed = action_closed(t, th) - action_closed(t, t.theta2);
            worst_quad = std::max(worst_quad, std::abs(closed - action_quad(t, th)));
            double h = 1e-6;
            double d = (action_closed(t, th + h) - action_closed(t, th - h)) / (2 * h);
            worst_deriv = std::max(
                worst_deriv, std::abs(d - p_theta_branch(t, th, Branch::Plus)));
        }
    }
    r.pass = worst_quad < 1e-8 && worst_deriv < 1e-6;
    r.detail = fmt("%d tori x %d angles: max |closed - quad| = %.3e, "
                   "max derivative mismatch = %.3e",
                   n_tori, n_theta, worst_quad, worst_deriv);
    return r;
}

// ------------------------------------------------------------------ check 5
CheckResult check_complete_integral(const VerifyOptions& opts) {
    CheckResult r{"complete_integral_quantization", false, "", 0.0};
    auto t = build_torus(0.3125, 0.0, 0.5);
    double j_err = std::abs(complete_integral(t) - kPi / 2.0);
    auto res10 = quantization_residual(t, 10);

    int levels_needed = opts.quick ? 20 : 50;
    double worst_res = 0.0;
    int counted = 0;
    for (int N = 1; counted < levels_needed; ++N)
        for (int j = 0; j <= 4 && counted < levels_needed; ++j) {
            auto lvl = level_for(N, j);
            ++counted;
            for (int k1 = lvl.k1_min; k1 <= lvl.k1_max; ++k1) {
                auto torus = build_torus(lvl.E, periodicity_P(N, k1), 0.5);
                auto qr = quantization_residual(torus, N);
                worst_res = std::max({worst_res, qr.action, qr.periodicity});
            }
        }
    r.pass = j_err < 1e-9 && res10.action < 1e-9 && res10.periodicity < 1e-9 &&
             worst_res < 1e-9;
    r.detail = fmt("|J - pi/2| = %.3e; N=10 residuals (%.1e, %.1e); "
                   "worst residual over %d levels = %.3e",
                   j_err, res10.action, res10.periodicity, counted, worst_res);
    return r;
}

// ------------------------------------------------------------------ check 6
CheckResult check_conservation_closure(const VerifyOptions& opts) {
    CheckResult r{"conservation_closure", false, "", 0.0};
    std::mt19937_64 rng(opts.seed + 6);
    int n_orbits = opts.quick ? 6 : 20;
    double worst_h = 0.0, worst_i2 = 0.0, worst_ret = 0.0;
    for (int k = 0; k < n_orbits; ++k) {
        auto t = random_torus(rng, 0.5);
        double w = t.annulus_width();
        double th = uniform_in(rng, t.theta2 + 0.1 * w, t.theta1 - 0.1 * w);
        Branch br = uniform01(rng) < 0.5 ? Branch::Plus : Branch::Minus;
        PhasePoint pt{th, uniform_in(rng, 0.0, kTwoPi),
                      p_theta_branch(t, th, br), p_phi_on(t, th)};
        FlowConfig cfg;
        cfg.B = 0.5;
        cfg.t_max = 3.0 * kPi / std::sqrt(t.E + 0.25);
        auto closure = closure_check(pt, cfg);
        worst_ret = std::max(worst_ret, closure.return_error);

        cfg.t_max = closure.period;
        auto drift = max_drift(integrate(pt, cfg));
        worst_h = std::max(worst_h, drift.energy);
        worst_i2 = std::max(worst_i2, drift.i2);
    }
    r.pass = worst_h < 1e-9 && worst_i2 < 1e-9 && worst_ret < 1e-6;
    r.detail = fmt("%d orbits: max H drift %.3e, max I2 drift %.3e, "
                   "max return error %.3e",
                   n_orbits, worst_h, worst_i2, worst_ret);
    return r;
}

// ------------------------------------------------------------------ check 7
CheckResult check_symbol_identities(const VerifyOptions& opts) {
    CheckResult r{"symbol_identities", false, "", 0.0};
    std::mt19937_64 rng(opts.seed + 7);
    int n_points = opts.quick ? 300 : 1000;
    BundleData bundle{0.5, 1};
    double worst_gamma = 0.0;
    for (int i = 0; i < n_points; ++i) {
        PhasePoint pt{uniform_in(rng, 0.05, kPi - 0.05),
                      uniform_in(rng, 0.0, kTwoPi), uniform_in(rng, -3.0, 3.0),
                      uniform_in(rng, -3.0, 3.0)};
        Patch patch = uniform01(rng) < 0.5 ? Patch::North : Patch::South;
        worst_gamma =
            std::max(worst_gamma, std::abs(gamma0_at(pt, patch, bundle)));
    }

    // pullback of the twisted form through the gauge shift, finite differences
    double worst_pb = 0.0;
    const double eps = 1e-6;
    for (int i = 0; i < (opts.quick ? 60 : 200); ++i) {
        PhasePoint pt{uniform_in(rng, 0.3, kPi - 0.3),
                      uniform_in(rng, 0.0, kTwoPi), uniform_in(rng, -2.0, 2.0),
                      uniform_in(rng, -2.0, 2.0)};
        Patch patch = uniform01(rng) < 0.5 ? Patch::North : Patch::South;
        Tangent v, w;
        for (int c = 0; c < 4; ++c) {
            v[c] = uniform_in(rng, -1.0, 1.0);
            w[c] = uniform_in(rng, -1.0, 1.0);
        }
        auto push = [&](const Tangent& u) {
            PhasePoint a{pt.theta + eps * u[0], pt.phi + eps * u[1],
                         pt.p_theta + eps * u[2], pt.p_phi + eps * u[3]};
            PhasePoint b{pt.theta - eps * u[0], pt.phi - eps * u[1],
                         pt.p_theta - eps * u[2], pt.p_phi - eps * u[3]};
            PhasePoint fa = gauge_shift(a, patch, bundle, MapDirection::Forward);
            PhasePoint fb = gauge_shift(b, patch, bundle, MapDirection::Forward);
            return Tangent{(fa.theta - fb.theta) / (2 * eps),
                           (fa.phi - fb.phi) / (2 * eps),
                           (fa.p_theta - fb.p_theta) / (2 * eps),
                           (fa.p_phi - fb.p_phi) / (2 * eps)};
        };
        PhasePoint image = gauge_shift(pt, patch, bundle, MapDirection::Forward);
        double pulled = twisted_omega_value(image, bundle, push(v), push(w));
        worst_pb = std::max(worst_pb, std::abs(pulled - omega0_value(v, w)));
    }
    r.pass = worst_gamma < 1e-9 && worst_pb < 1e-6;
    r.detail = fmt("max |Gamma0| = %.3e over %d points; "
                   "max |f*Omega - Omega0| = %.3e",
                   worst_gamma, n_points, worst_pb);
    return r;
}

// ------------------------------------------------------------------ check 8
CheckResult check_gauge_holonomy(const VerifyOptions& opts) {
    CheckResult r{"gauge_holonomy", false, "", 0.0};
    (void)opts;
    double worst_pot = 0.0;
    for (const auto& bundle :
         {BundleData{0.5, 1}, BundleData{0.5, 2}, BundleData{1.5, 1}}) {
        // transition slope from two well-separated longitudes (branch-safe)
        double dphi = 0.4 / std::max(1.0, 2.0 * bundle.effective_charge());
        double slope =
            std::arg(transition_at(bundle, 1.0 + dphi) *
                     std::conj(transition_at(bundle, 1.0))) / dphi;
        for (int i = 1; i < 40; ++i) {
            double th = kPi * i / 40.0;
            double diff = potential_at(Patch::North, bundle, th) -
                          potential_at(Patch::South, bundle, th);
            worst_pot = std::max(worst_pot, std::abs(diff - slope));
        }
    }

    // latitude loops against the transport ODE oracle and the enclosed flux
    double worst_ode = 0.0, worst_flux = 0.0;
    for (const auto& bundle : {BundleData{0.5, 1}, BundleData{0.5, 2}}) {
        for (double th : {0.3, kPi / 2.0, 2.0 * kPi / 3.0, 2.8}) {
            auto loop = latitude_loop(th, 4000);
            auto hol = holonomy(loop, bundle);
            worst_ode = std::max(
                worst_ode, std::abs(hol - transport_ode_oracle(loop, bundle)));
            // flux by adaptive quadrature of N*B*sin over the polar cap
            double flux = 0.0;
            {
                int steps = 4000;
                double acc = 0.0, h = th / steps;
                for (int i = 0; i < steps; ++i) {
                    double a = i * h, b = a + h, m = a + 0.5 * h;
                    acc += h / 6.0 *
                           (std::sin(a) + 4.0 * std::sin(m) + std::sin(b));
                }
                flux = kTwoPi * bundle.effective_charge() * acc;
            }
            worst_flux =
                std::max(worst_flux, std::abs(hol - std::polar(1.0, flux)));
        }
    }
    r.pass = worst_pot < 1e-12 && worst_ode < 1e-8 && worst_flux < 1e-8;
    r.detail = fmt("gauge compatibility %.3e; holonomy vs ODE %.3e; "
                   "holonomy vs flux %.3e",
                   worst_pot, worst_ode, worst_flux);
    return r;
}

// ------------------------------------------------------------------ check 9
CheckResult check_quasimode_residuals(const VerifyOptions& opts) {
    CheckResult r{"quasimode_residuals", false, "", 0.0};
    std::vector<int> Ns = opts.quick ? std::vector<int>{8, 16, 32}
                                     : std::vector<int>{8, 16, 32, 64};
    std::vector<double> n_vals, glob, plat;
    SectionGrid last_section;
    for (int N : Ns) {
        auto level = level_for(N, 2);
        int k1 = (N + 1) / 2;
        auto sec = almost_eigenfunction(level, k1, 4001, 16);
        auto res = residual_norms(sec);
        n_vals.push_back(N);
        glob.push_back(res.global);
        plat.push_back(res.plateau);
        if (N == Ns.back()) last_section = sec;
    }
    double plateau_slope = loglog_slope(n_vals, plat);
    double global_slope = loglog_slope(n_vals, glob);
    auto detuned = residual_norms(last_section, 1.0);
    double detune_ratio = detuned.plateau / plat.back();

    bool plateau_ok = plateau_slope > -0.3 && plateau_slope < 0.3;
    bool global_ok = global_slope <= 1.1;
    bool detune_ok = detune_ratio >= 10.0;
    r.pass = plateau_ok && global_ok && detune_ok;
    r.detail = fmt("plateau slope %+.3f (want [-0.3,0.3]: %s), "
                   "global slope %+.3f (want <=1.1: %s), "
                   "detune ratio %.2fx (want >=10: %s)",
                   plateau_slope, plateau_ok ? "ok" : "FAIL", global_slope,
                   global_ok ? "ok" : "FAIL", detune_ratio,
                   detune_ok ? "ok" : "FAIL");
    return r;
}

// ----------------------------------------------------------------- check 10
CheckResult check_section_gauge_consistency(const VerifyOptions& opts) {
    CheckResult r{"section_gauge_consistency", false, "", 0.0};
    std::vector<int> Ns = opts.quick ? std::vector<int>{8, 16}
                                     : std::vector<int>{8, 16, 32, 64};
    double worst = 0.0;
    auto check_section = [&](const SectionGrid& sec) {
        int nt = static_cast<int>(sec.theta_samples.size());
        int np = static_cast<int>(sec.phi_samples.size());
        double two_nb = 2.0 * sec.level.N * 0.5;
        for (int i = 0; i < nt; ++i)
            for (int p = 0; p < np; ++p) {
                auto expected = std::polar(1.0, two_nb * sec.phi_samples[p]) *
                                sec.south_at(i, p);
                worst = std::max(worst,
                                 std::abs(sec.north_at(i, p) - expected));
            }
    };
    for (int N : Ns)
        check_section(almost_eigenfunction(level_for(N, 2), (N + 1) / 2, 801, 32));
    check_section(almost_eigenfunction(level_for(10, 1), 3, 801, 32));
    r.pass = worst < 1e-12;
    r.detail = fmt("max pointwise |north - transition*south| = %.3e", worst);
    return r;
}

}  // namespace

std::complex<double> transport_ode_oracle(const LoopPath& loop,
                                          const BundleData& bundle,
                                          int substeps_per_segment) {
    const auto& pts = loop.samples;
    if (!loop.closed || pts.size() < 3)
        throw OpenLoopError("transport oracle needs a closed loop");
    double nb = bundle.effective_charge();
    auto a_phi = [&](Patch p, double th) {
        return p == Patch::North ? nb * (1.0 - std::cos(th))
                                 : -nb * (1.0 + std::cos(th));
    };
    Patch start = pts.front()[0] <= kPi / 2.0 ? Patch::North : Patch::South;
    Patch cur = start;
    std::complex<double> xi(1.0, 0.0);
    double phi_u = pts.front()[1];

    auto transport = [&](double th_a, double phi_a, double th_b, double phi_b) {
        Patch side = std::max(th_a, th_b) <= kPi / 2.0 ? Patch::North : Patch::South;
        if (side != cur) {
            double sgn = cur == Patch::North ? -1.0 : +1.0;
            xi *= std::polar(1.0, sgn * 2.0 * nb * phi_a);
            cur = side;
        }
        // RK4 on xi' = i a(t) xi with a(t) = A_phi(theta(t)) dphi/dt
        double dphi = phi_b - phi_a;
        double h = 1.0 / substeps_per_segment;
        auto a_of = [&](double s) {
            return a_phi(cur, th_a + s * (th_b - th_a)) * dphi;
        };
        for (int k = 0; k < substeps_per_segment; ++k) {
            double s = k * h;
            std::complex<double> i1(0.0, 1.0);
            auto f = [&](double ss, std::complex<double> x) {
                return i1 * a_of(ss) * x;
            };
            auto k1 = f(s, xi);
            auto k2 = f(s + 0.5 * h, xi + 0.5 * h * k1);
            auto k3 = f(s + 0.5 * h, xi + 0.5 * h * k2);
            auto k4 = f(s + h, xi + h * k3);
            xi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    };

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double th_a = pts[i][0], th_b = pts[i + 1][0];
        double dphi = wrap_pi(pts[i + 1][1] - pts[i][1]);
        double phi_a = phi_u, phi_b = phi_u + dphi;
        bool straddles = (th_a - kPi / 2.0) * (th_b - kPi / 2.0) < 0.0;
        if (straddles) {
            double f = (kPi / 2.0 - th_a) / (th_b - th_a);
            double phi_m = phi_a + f * (phi_b - phi_a);
            transport(th_a, phi_a, kPi / 2.0, phi_m);
            transport(kPi / 2.0, phi_m, th_b, phi_b);
        } else {
            transport(th_a, phi_a, th_b, phi_b);
        }
        phi_u = phi_b;
    }
    if (cur != start) {
        double sgn = cur == Patch::North ? -1.0 : +1.0;
        xi *= std::polar(1.0, sgn * 2.0 * nb * phi_u);
    }
    return xi / std::abs(xi);
}

std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& opts) {
    using Clock = std::chrono::steady_clock;
    using Check = CheckResult (*)(const VerifyOptions&);
    struct Item {
        const char* name;
        Check fn;
        double budget_s;
    };
    const Item checks[] = {
        {"correction_term_identity", check_correction_term, 1.0},
        {"multiplicity_identity", check_multiplicity, 1.0},
        {"spectral_oracle", check_spectral_oracle, 30.0},
        {"action_closed_form", check_action_closed_form, 10.0},
        {"complete_integral_quantization", check_complete_integral, 5.0},
        {"conservation_closure", check_conservation_closure, 30.0},
        {"symbol_identities", check_symbol_identities, 5.0},
        {"gauge_holonomy", check_gauge_holonomy, 5.0},
        {"quasimode_residuals", check_quasimode_residuals, 60.0},
        {"section_gauge_consistency", check_section_gauge_consistency, 5.0},
    };
    std::vector<CheckResult> out;
    for (const auto& item : checks) {
        auto t0 = Clock::now();
        CheckResult res;
        try {
            res = item.fn(opts);
        } catch (const std::exception& e) {
            res.name = item.name;
            res.pass = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.elapsed_s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (res.elapsed_s >= item.budget_s) {
            res.pass = false;
            res.detail += fmt(" [over the %.0f s budget]", item.budget_s);
        }
        out.push_back(std::move(res));
    }
    return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

nlohmann::ordered_json verify_report(const std::vector<CheckResult>& results,
                                     const VerifyOptions& opts) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& r : results)
        checks.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    return nlohmann::ordered_json{{"seed", opts.seed},
                                  {"scale", opts.quick ? "quick" : "full"},
                                  {"fault", opts.fault},
                                  {"pass", all_pass(results)},
                                  {"checks", checks}};
}

}  // namespace monopole
