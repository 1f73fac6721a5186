#include "presliding/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "presliding/errors.hpp"

namespace presliding {

namespace {

// Overshoot of |F| past the band that a step may silently clamp, relative
// to the band.
constexpr double kClampTolerance = 1e-12;
constexpr int kMaxBisections = 100;

struct Rates {
    double dx, dv, df, de;
};

// Classical RK4 on (x, v, F, e). The right-hand side does not depend on x
// or e. Stage forces are projected into the band before the rate is
// evaluated; the same projected force drives v and e so that
// (m/2) v^2 + e stays balanced stage by stage.
template <class RateFn>
OscState rk4(const OscState& s, double h, double mass, double bound, RateFn&& rate) {
    const auto eval = [&](double v, double f) -> Rates {
        const double fb = std::clamp(f, -bound, bound);
        return {v, -fb / mass, rate(fb, v) * v, fb * v};
    };
    const Rates k1 = eval(s.v, s.f);
    const Rates k2 = eval(s.v + 0.5 * h * k1.dv, s.f + 0.5 * h * k1.df);
    const Rates k3 = eval(s.v + 0.5 * h * k2.dv, s.f + 0.5 * h * k2.df);
    const Rates k4 = eval(s.v + h * k3.dv, s.f + h * k3.df);

    const double w = h / 6.0;
    OscState out;
    out.t = s.t + h;
    out.x = s.x + w * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    out.v = s.v + w * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    out.f = s.f + w * (k1.df + 2.0 * k2.df + 2.0 * k3.df + k4.df);
    out.e_f_cum = s.e_f_cum + w * (k1.de + 2.0 * k2.de + 2.0 * k3.de + k4.de);
    return out;
}

// Bisects the step length h in (0, h_max] from `from` until |value| < tol.
// value(state) is positive before the event and non-positive after it.
template <class Advance, class Value>
OscState bisect_event(const OscState& from, double h_max, Advance&& advance, Value&& value,
                      double tol, const char* what) {
    double lo = 0.0;
    double hi = h_max;
    for (int iter = 0; iter < kMaxBisections; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const OscState trial = advance(from, mid);
        const double g = value(trial);
        if (std::abs(g) < tol) {
            return trial;
        }
        if (mid <= lo || mid >= hi) {
            break;
        }
        (g > 0.0 ? lo : hi) = mid;
    }
    throw ConvergenceError(std::string(what) + ": event localization did not converge near t = " +
                           std::to_string(from.t));
}

}  // namespace

double default_dt(const FrictionParams& p) { return std::sqrt(p.mass / p.sigma) / 200.0; }

void SimConfig::validate() const {
    params.validate();
    if (model == ForceModel::StopSpring) {
        spring.validate();
    }
    if (!std::isfinite(x0) || !std::isfinite(v0) || !std::isfinite(f0)) {
        throw PreconditionError("SimConfig: initial state must be finite");
    }
    if (v0 == 0.0) {
        throw PreconditionError("SimConfig: v0 must be nonzero");
    }
    if (!(std::abs(f0) <= force_bound())) {
        throw PreconditionError("SimConfig: |f0| must not exceed the force bound");
    }
    if (f0 * v0 > 0.0) {
        throw PreconditionError(
            "SimConfig: f0 must not act along v0 (the first half-cycle needs a force zero "
            "crossing to measure its energy)");
    }
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw PreconditionError("SimConfig: dt must be > 0 (or 0 for the default)");
    }
    if (!(t_max > 0.0)) {
        throw PreconditionError("SimConfig: t_max must be > 0");
    }
    if (max_reversals < 1) {
        throw PreconditionError("SimConfig: max_reversals must be >= 1");
    }
}

double SimConfig::effective_dt() const {
    if (dt > 0.0) {
        return dt;
    }
    if (model == ForceModel::StopSpring) {
        return std::sqrt(params.mass / spring.k) / 200.0;
    }
    return default_dt(params);
}

double SimConfig::initial_kinetic_energy() const noexcept { return 0.5 * params.mass * v0 * v0; }

double SimConfig::effective_stop_energy() const {
    return stop_energy >= 0.0 ? stop_energy : 1e-12 * initial_kinetic_energy();
}

double SimConfig::force_bound() const noexcept {
    return model == ForceModel::StopSpring ? spring.f_c : params.f_c;
}

double reversal_velocity_tolerance(const SimConfig& cfg) noexcept {
    return 1e-9 * std::max(std::abs(cfg.v0), 1.0);
}

OscState step(const OscState& s, double dt, const FrictionParams& p) {
    if (!(std::abs(s.f) <= p.f_c)) {
        throw PreconditionError("step: |F| exceeds F_c on entry");
    }
    OscState out = rk4(s, dt, p.mass, p.f_c,
                       [&p](double f, double v) { return dahl_rate(f, v, p); });
    const double excess = std::abs(out.f) - p.f_c;
    if (excess > 0.0) {
        if (excess > kClampTolerance * p.f_c) {
            throw StepRejected("step: F left the band by " + std::to_string(excess) +
                               "; dt is too large for sigma / F_c");
        }
        out.f = std::copysign(p.f_c, out.f);
    }
    return out;
}

OscState step(const OscState& s, double dt, const LinearSpringParams& sp, double mass) {
    OscState out = rk4(s, dt, mass, sp.f_c,
                       [&sp](double f, double v) { return stop_spring_rate(f, v, sp); });
    out.f = std::clamp(out.f, -sp.f_c, sp.f_c);
    return out;
}

OscState locate_reversal(const OscState& s_before, const OscState& s_after,
                         const FrictionParams& p, double tol_v) {
    if (s_before.v == 0.0) {
        return s_before;
    }
    if (s_after.v == 0.0) {
        return s_after;
    }
    if (std::signbit(s_before.v) == std::signbit(s_after.v)) {
        throw PreconditionError("locate_reversal: velocity does not change sign in the bracket");
    }
    const double dir = s_before.v > 0.0 ? 1.0 : -1.0;
    return bisect_event(
        s_before, s_after.t - s_before.t,
        [&p](const OscState& s, double h) { return step(s, h, p); },
        [dir](const OscState& s) { return s.v * dir; }, tol_v, "locate_reversal");
}

Trajectory simulate(const SimConfig& cfg) {
    cfg.validate();

    const double dt = cfg.effective_dt();
    const double tol_v = reversal_velocity_tolerance(cfg);
    const double tol_f = 1e-12 * cfg.force_bound();
    const double stop_energy = cfg.effective_stop_energy();
    const auto advance = [&cfg](const OscState& s, double h) {
        return cfg.model == ForceModel::Dahl ? step(s, h, cfg.params)
                                             : step(s, h, cfg.spring, cfg.params.mass);
    };

    Trajectory traj;
    traj.config = cfg;

    OscState s{0.0, cfg.x0, cfg.v0, cfg.f0, 0.0};
    traj.samples.push_back(s);

    Direction dir = direction_of(cfg.v0);
    // With f0 == 0 the start is itself a force zero crossing; otherwise f0
    // opposes v0 and the crossing is still ahead.
    bool crossing_armed = cfg.f0 != 0.0;
    double reference_energy = crossing_armed ? 0.0 : kinetic_energy(s, cfg.params);
    std::optional<ReversalRecord> pending;
    int reversal_count = 0;

    while (true) {
        if (s.t >= cfg.t_max) {
            traj.stop_reason = StopReason::TimeLimit;
            break;
        }
        const double h = std::min(dt, cfg.t_max - s.t);
        const OscState next = advance(s, h);
        const double d = sign_of(dir);
        const bool reversal = next.v * d <= 0.0;
        const bool crossing = crossing_armed && next.f * d >= 0.0;
        if (!reversal && !crossing) {
            s = next;
            traj.samples.push_back(s);
            continue;
        }

        std::optional<OscState> at_reversal;
        std::optional<OscState> at_crossing;
        if (reversal) {
            at_reversal = next.v == 0.0 ? next
                                        : bisect_event(
                                              s, h, advance,
                                              [d](const OscState& st) { return st.v * d; },
                                              tol_v, "simulate (reversal)");
        }
        if (crossing) {
            at_crossing = next.f == 0.0 ? next
                                        : bisect_event(
                                              s, h, advance,
                                              [d](const OscState& st) { return -st.f * d; },
                                              tol_f, "simulate (force zero crossing)");
        }
        const bool reversal_first =
            at_reversal && (!at_crossing || at_reversal->t <= at_crossing->t);

        if (reversal_first) {
            s = *at_reversal;
            traj.samples.push_back(s);
            if (pending) {
                throw std::logic_error("simulate: reversal without an intervening force zero crossing");
            }
            pending = ReversalRecord{reversal_count++, s.t, s.x, s.f, 0.0, 0.0};
            dir = flip(dir);
            crossing_armed = true;
            continue;
        }

        s = *at_crossing;
        traj.samples.push_back(s);
        crossing_armed = false;
        const double peak = kinetic_energy(s, cfg.params);
        if (pending) {
            pending->e_p = peak;
            pending->e_d_halfcycle = reference_energy - peak;
            traj.reversals.push_back(*pending);
            pending.reset();
            if (reversal_count >= cfg.max_reversals) {
                traj.stop_reason = StopReason::MaxReversals;
                break;
            }
            if (peak < stop_energy) {
                traj.stop_reason = StopReason::StopEnergy;
                break;
            }
        }
        reference_energy = peak;
    }
    return traj;
}

double kinetic_energy(const OscState& s, const FrictionParams& p) noexcept {
    return 0.5 * p.mass * s.v * s.v;
}

namespace {

double interpolate_energy(const Trajectory& traj, double t) {
    const auto& samples = traj.samples;
    if (samples.empty() || t < samples.front().t || t > samples.back().t) {
        throw std::out_of_range("restoring_energy_between: time " + std::to_string(t) +
                                " outside the trajectory span");
    }
    auto hi = std::lower_bound(samples.begin(), samples.end(), t,
                               [](const OscState& s, double tt) { return s.t < tt; });
    if (hi->t == t) {
        return hi->e_f_cum;
    }
    const OscState& a = *(hi - 1);
    const OscState& b = *hi;
    // Cubic Hermite with the exact slopes de/dt = F v at both ends.
    const double h = b.t - a.t;
    const double u = (t - a.t) / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    return h00 * a.e_f_cum + h10 * h * (a.f * a.v) + h01 * b.e_f_cum + h11 * h * (b.f * b.v);
}

}  // namespace

double restoring_energy_between(const Trajectory& traj, double t_a, double t_b) {
    if (t_a == t_b) {
        interpolate_energy(traj, t_a);  // range check
        return 0.0;
    }
    return interpolate_energy(traj, t_b) - interpolate_energy(traj, t_a);
}

PeakVelocity peak_velocity_between_reversals(const Trajectory& traj, std::size_t i) {
    if (i + 1 >= traj.reversals.size()) {
        throw std::out_of_range("peak_velocity_between_reversals: reversal " +
                                std::to_string(i + 1) + " not recorded");
    }
    const double t_lo = traj.reversals[i].t_i;
    const double t_hi = traj.reversals[i + 1].t_i;
    auto first = std::lower_bound(traj.samples.begin(), traj.samples.end(), t_lo,
                                  [](const OscState& s, double t) { return s.t < t; });
    PeakVelocity best{t_lo, 0.0};
    for (auto it = first; it != traj.samples.end() && it->t <= t_hi; ++it) {
        if (std::abs(it->v) > std::abs(best.v_peak)) {
            best = {it->t, it->v};
        }
    }
    return best;
}

const OscState& sample_at(const Trajectory& traj, double t) {
    auto it = std::lower_bound(traj.samples.begin(), traj.samples.end(), t,
                               [](const OscState& s, double tt) { return s.t < tt; });
    if (it == traj.samples.end() || it->t != t) {
        throw std::out_of_range("sample_at: no sample at t = " + std::to_string(t));
    }
    return *it;
}

}  // namespace presliding
