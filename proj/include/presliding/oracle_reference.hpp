#pragma once

#include "presliding/oscillator.hpp"

namespace presliding::oracle {

/// Re-runs the simulation with the step divided by `refinement` (>= 2).
/// Used as the convergence reference for the fixed-step integrator.
[[nodiscard]] Trajectory reference_integrate(const SimConfig& cfg, double refinement);

/// Integrates from `s` to `s.t + span` in `n_steps` equal fixed steps with
/// the Dahl force. Plain step loop without event handling, for smooth arcs.
[[nodiscard]] OscState integrate_arc(const OscState& s, double span, int n_steps,
                                     const FrictionParams& p);

}  // namespace presliding::oracle
