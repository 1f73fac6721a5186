#pragma once

// Unforced oscillator m x'' + F = 0 with the friction force F carried as a
// state. Fixed-step RK4 with event localization by re-integration
// bisection for velocity reversals and force zero crossings.

#include <cstddef>
#include <utility>
#include <vector>

#include "presliding/hysteresis.hpp"

namespace presliding {

struct OscState {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
    double f = 0.0;
    double e_f_cum = 0.0;  ///< running integral of F v dt since t = 0
};

enum class ForceModel { Dahl, StopSpring };

struct SimConfig {
    FrictionParams params;  ///< mass is taken from here for both models
    ForceModel model = ForceModel::Dahl;
    LinearSpringParams spring;  ///< used when model == StopSpring
    double x0 = 0.0;
    double v0 = 0.5;
    double f0 = 0.0;
    double dt = 0.0;           ///< 0 selects default_dt()
    double t_max = 100.0;
    int max_reversals = 50;
    double stop_energy = -1.0;  ///< < 0 selects 1e-12 x initial energy

    void validate() const;
    [[nodiscard]] double effective_dt() const;
    [[nodiscard]] double effective_stop_energy() const;
    [[nodiscard]] double initial_kinetic_energy() const noexcept;
    /// |F| bound of the active model.
    [[nodiscard]] double force_bound() const noexcept;
};

/// (1/200) sqrt(m / sigma): a small fraction of the small-amplitude period
/// around a reversal.
[[nodiscard]] double default_dt(const FrictionParams& p);

struct ReversalRecord {
    int index = 0;
    double t_i = 0.0;
    double x_i = 0.0;
    double f_i = 0.0;
    double e_p = 0.0;            ///< kinetic energy at the next force zero crossing
    double e_d_halfcycle = 0.0;  ///< energy lost since the previous reversal
};

enum class StopReason { TimeLimit, MaxReversals, StopEnergy };

struct Trajectory {
    std::vector<OscState> samples;
    std::vector<ReversalRecord> reversals;
    SimConfig config;
    StopReason stop_reason = StopReason::TimeLimit;
};

/// One RK4 step of x' = v, v' = -F/m, F' = dahl_rate(F, v) v, e' = F v.
/// Stage forces are clamped into the band; a final overshoot beyond
/// 1e-12 F_c throws StepRejected.
[[nodiscard]] OscState step(const OscState& s, double dt, const FrictionParams& p);

/// Same with the stop-operator force map. The stop operator is a projection,
/// so overshoot past saturation is clamped.
[[nodiscard]] OscState step(const OscState& s, double dt, const LinearSpringParams& sp, double mass);

/// Bisects the step length from s_before until |v| < tol_v and returns the
/// reversal state. s_before and s_after must have velocities of opposite
/// sign; a zero velocity at either end returns that sample unchanged.
[[nodiscard]] OscState locate_reversal(const OscState& s_before, const OscState& s_after,
                                       const FrictionParams& p, double tol_v);

[[nodiscard]] Trajectory simulate(const SimConfig& cfg);

[[nodiscard]] double kinetic_energy(const OscState& s, const FrictionParams& p) noexcept;

/// e_f_cum(t_b) - e_f_cum(t_a), cubic Hermite interpolation between samples.
[[nodiscard]] double restoring_energy_between(const Trajectory& traj, double t_a, double t_b);

struct PeakVelocity {
    double t_0 = 0.0;
    double v_peak = 0.0;
};

/// Sample of largest |v| between reversals i and i+1.
[[nodiscard]] PeakVelocity peak_velocity_between_reversals(const Trajectory& traj, std::size_t i);

/// Sample recorded at exactly time t (event states are stored as samples).
[[nodiscard]] const OscState& sample_at(const Trajectory& traj, double t);

/// Velocity tolerance used for reversal localization: 1e-9 max(|v0|, 1).
[[nodiscard]] double reversal_velocity_tolerance(const SimConfig& cfg) noexcept;

}  // namespace presliding
