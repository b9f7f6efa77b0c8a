#include "monopole/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace monopole {

double hamiltonian(const PhasePoint& pt, double pole_guard) {
    if (!(pt.theta > pole_guard && pt.theta < kPi - pole_guard))
        throw PoleProximityError("hamiltonian: theta too close to a pole");
    double s = std::sin(pt.theta);
    return pt.p_theta * pt.p_theta + pt.p_phi * pt.p_phi / (s * s);
}

double i2_at(const PhasePoint& pt, double B) {
    return pt.p_phi - B * std::cos(pt.theta);
}

Tangent flow_rhs(const PhasePoint& pt, double B, double pole_guard) {
    if (!(pt.theta > pole_guard && pt.theta < kPi - pole_guard))
        throw PoleProximityError("flow_rhs: theta too close to a pole");
    double s = std::sin(pt.theta);
    double c = std::cos(pt.theta);
    double s2 = s * s;
    return Tangent{2.0 * pt.p_theta,
                   2.0 * pt.p_phi / s2,
                   2.0 * c / (s2 * s) * pt.p_phi * pt.p_phi +
                       2.0 * B * pt.p_phi / s,
                   -2.0 * B * s * pt.p_theta};
}

namespace {

using State = std::array<double, 4>;

State raw_rhs(const State& y, double B) {
    double s = std::sin(y[0]);
    double c = std::cos(y[0]);
    double s2 = s * s;
    return State{2.0 * y[2], 2.0 * y[3] / s2,
                 2.0 * c / (s2 * s) * y[3] * y[3] + 2.0 * B * y[3] / s,
                 -2.0 * B * s * y[2]};
}

// Dormand-Prince 5(4) pair with FSAL, PI step-size control.
class Dopri5 {
public:
    Dopri5(double B, double atol, double rtol, double pole_guard)
        : B_(B), atol_(atol), rtol_(rtol), guard_(pole_guard) {}

    // Advance y from t to t_end; cb(t, y) is invoked after every accepted
    // step (not for the initial state). clamp_dt > 0 additionally lands on
    // the grid t0 + k*clamp_dt.
    void drive(State& y, double& t, double t_end,
               const std::function<void(double, const State&)>& cb,
               double clamp_dt = 0.0) {
        constexpr double eps = std::numeric_limits<double>::epsilon();
        double dir = t_end >= t ? 1.0 : -1.0;
        if (t == t_end) return;
        double span = std::abs(t_end - t);
        double h = dir * initial_step(y, span);
        State k1 = raw_rhs(y, B_);
        double err_prev = 1.0;
        double next_grid = clamp_dt > 0.0 ? t + dir * clamp_dt : 0.0;
        long rejects_in_row = 0;
        long accepted = 0;

        while (dir * (t_end - t) > 4.0 * eps * std::max(1.0, std::abs(t_end))) {
            double h_lim = dir * (t_end - t);
            if (clamp_dt > 0.0)
                h_lim = std::min(h_lim, std::max(std::abs(next_grid - t),
                                                 1e-9 * clamp_dt));
            if (std::abs(h) > h_lim) h = dir * h_lim;

            State y5;
            State k_last;
            double err = step(y, k1, h, y5, k_last);

            if (std::isfinite(err) && err <= 1.0) {
                t += h;
                y = y5;
                k1 = k_last;  // FSAL
                if (!(y[0] > guard_ && y[0] < kPi - guard_))
                    throw PoleCrossingError(
                        "trajectory entered the pole guard at t = " +
                        std::to_string(t));
                cb(t, y);
                if (clamp_dt > 0.0)
                    while (dir * (t - next_grid) >= -1e-9 * clamp_dt)
                        next_grid += dir * clamp_dt;
                double fac = 0.9 * std::pow(err, -0.7 / 5.0) *
                             std::pow(err_prev, 0.4 / 5.0);
                h *= std::clamp(fac, 0.2, 5.0);
                err_prev = std::max(err, 1e-4);
                rejects_in_row = 0;
                if (++accepted > 20'000'000)
                    throw StepFailureError("integrator exceeded step budget");
            } else {
                double fac = std::isfinite(err)
                                 ? std::max(0.2, 0.9 * std::pow(err, -0.2))
                                 : 0.2;
                h *= fac;
                if (std::abs(h) < 16.0 * eps * std::max(1.0, std::abs(t)))
                    throw StepFailureError("integrator step size underflow");
                if (++rejects_in_row > 200)
                    throw StepFailureError("integrator cannot reach tolerance");
            }
        }
    }

private:
    double B_, atol_, rtol_, guard_;

    double initial_step(const State& y, double span) const {
        State f = raw_rhs(y, B_);
        double dy = 0.0, df = 0.0;
        for (int i = 0; i < 4; ++i) {
            dy = std::max(dy, std::abs(y[i]));
            df = std::max(df, std::abs(f[i]));
        }
        double h = (df > 0.0) ? 0.01 * std::max(dy, 1.0) / df : 1e-3 * span;
        return std::min(h, 0.1 * span);
    }

    // One trial step; returns the weighted error norm, fills y5 and the last
    // stage derivative (FSAL).
    double step(const State& y, const State& k1, double h, State& y5,
                State& k7) const {
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15,
                                a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                                b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                                b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                                e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                                e6 = 22.0 / 525, e7 = -1.0 / 40;

        State t2, t3, t4, t5, t6;
        for (int i = 0; i < 4; ++i) t2[i] = y[i] + h * a21 * k1[i];
        State k2 = raw_rhs(t2, B_);
        for (int i = 0; i < 4; ++i)
            t3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        State k3 = raw_rhs(t3, B_);
        for (int i = 0; i < 4; ++i)
            t4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        State k4 = raw_rhs(t4, B_);
        for (int i = 0; i < 4; ++i)
            t5[i] = y[i] +
                    h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        State k5 = raw_rhs(t5, B_);
        for (int i = 0; i < 4; ++i)
            t6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                a64 * k4[i] + a65 * k5[i]);
        State k6 = raw_rhs(t6, B_);
        for (int i = 0; i < 4; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                b5 * k5[i] + b6 * k6[i]);
        k7 = raw_rhs(y5, B_);

        double err2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
            double sc =
                atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(y5[i]));
            err2 += (e / sc) * (e / sc);
        }
        return std::sqrt(err2 / 4.0);
    }
};

State to_state(const PhasePoint& pt) {
    return State{pt.theta, pt.phi, pt.p_theta, pt.p_phi};
}

PhasePoint to_point(const State& y) {
    return PhasePoint{y[0], wrap_two_pi(y[1]), y[2], y[3]};
}

}  // namespace

std::vector<TrajectorySample> integrate(const PhasePoint& pt0,
                                        const FlowConfig& cfg) {
    if (cfg.abs_tol <= 0.0 || cfg.rel_tol <= 0.0)
        throw std::invalid_argument("integrator tolerances must be positive");
    State y = to_state(pt0);
    double t = 0.0;
    std::vector<TrajectorySample> out;
    auto record = [&](double tt, const State& yy) {
        PhasePoint p = to_point(yy);
        out.push_back({tt, p, hamiltonian(p, cfg.pole_guard), i2_at(p, cfg.B)});
    };
    record(0.0, y);
    Dopri5 stepper(cfg.B, cfg.abs_tol, cfg.rel_tol, cfg.pole_guard);
    stepper.drive(y, t, cfg.t_max, record, cfg.output_dt);
    return out;
}

ConservationDrift max_drift(const std::vector<TrajectorySample>& samples) {
    ConservationDrift d{0.0, 0.0};
    if (samples.empty()) return d;
    for (const auto& s : samples) {
        d.energy = std::max(d.energy, std::abs(s.energy - samples[0].energy));
        d.i2 = std::max(d.i2, std::abs(s.i2 - samples[0].i2));
    }
    return d;
}

ClosureResult closure_check(const PhasePoint& pt0, const FlowConfig& cfg) {
    if (cfg.abs_tol <= 0.0 || cfg.rel_tol <= 0.0)
        throw std::invalid_argument("integrator tolerances must be positive");
    if (!(hamiltonian(pt0, cfg.pole_guard) > 0.0))
        throw std::invalid_argument("closure_check requires positive energy");

    Dopri5 stepper(cfg.B, cfg.abs_tol, cfg.rel_tol, cfg.pole_guard);

    // Reference state; if the initial phi velocity is degenerate, shift the
    // section base point slightly along the flow (the period is unchanged).
    State z0 = to_state(pt0);
    double t_ref = 0.0;
    {
        double s = std::sin(z0[0]);
        if (std::abs(2.0 * z0[3] / (s * s)) < 1e-9) {
            double dt = 1e-3 / std::sqrt(hamiltonian(pt0) + 1.0);
            double t = 0.0;
            stepper.drive(z0, t, dt, [](double, const State&) {});
            t_ref = dt;
        }
    }
    double s0 = std::sin(z0[0]);
    double dir = (2.0 * z0[3] / (s0 * s0)) >= 0.0 ? 1.0 : -1.0;
    double mom_scale = std::max(1.0, std::max(std::abs(z0[2]), std::abs(z0[3])));

    auto dist_to_start = [&](const State& y) {
        double dth = y[0] - z0[0];
        double dphi = wrap_pi(y[1] - z0[1]);
        double dpt = y[2] - z0[2];
        double dpp = y[3] - z0[3];
        return std::sqrt(dth * dth + dphi * dphi + dpt * dpt + dpp * dpp);
    };

    // w(t) = dir * (phi_unwrapped(t) - phi0); candidate returns are the
    // upward crossings of w through multiples of 2*pi.
    double t_prev = t_ref;
    State y_prev = z0;
    double w_prev = 0.0;
    State y = z0;
    double t = t_ref;
    ClosureResult found{-1.0, 0.0};
    struct ReturnFound {};

    auto value_at = [&](const State& base, double tb, double tt) {
        State yy = base;
        double tcur = tb;
        stepper.drive(yy, tcur, tt, [](double, const State&) {});
        return yy;
    };

    auto on_step = [&](double tt, const State& yy) {
        double w = dir * (yy[1] - z0[1]);
        if (w > w_prev) {
            // integer levels 2*pi*m crossed upward within (w_prev, w]
            long m_lo = static_cast<long>(std::ceil(w_prev / kTwoPi + 1e-15));
            long m_hi = static_cast<long>(std::floor(w / kTwoPi + 1e-15));
            for (long m = m_lo; m <= m_hi; ++m) {
                double level = kTwoPi * static_cast<double>(m);
                // bisect for the crossing time in [t_prev, tt]
                double ta = t_prev, tb = tt;
                for (int it = 0;
                     it < 80 && (tb - ta) > 1e-14 * std::max(1.0, tb); ++it) {
                    double tm = 0.5 * (ta + tb);
                    State ym = value_at(y_prev, t_prev, tm);
                    double wm = dir * (ym[1] - z0[1]);
                    (wm < level ? ta : tb) = tm;
                }
                double tc = 0.5 * (ta + tb);
                State yc = value_at(y_prev, t_prev, tc);
                double d = dist_to_start(yc);
                if (d < 1e-3 * mom_scale) {
                    found.period = tc - t_ref;
                    found.return_error = d;
                    throw ReturnFound{};
                }
            }
        }
        t_prev = tt;
        y_prev = yy;
        w_prev = w;
    };

    try {
        stepper.drive(y, t, t_ref + std::abs(cfg.t_max), on_step);
    } catch (const ReturnFound&) {
        return found;
    }
    throw NoReturnError("no return to the initial point before t_max");
}

}  // namespace monopole
