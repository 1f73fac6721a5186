#pragma once

// Closed-form reversal calculus of the Dahl model with gamma = 1.
//
// Everything is derived for the ascending branch that starts at a reversal
// force -F_c <= f_i <= 0. Descending half-cycles are handled by the odd
// symmetry of the branch map (F -> -F, x -> -x). Unless stated otherwise the
// displacement frame puts the force zero crossing of the branch at x = 0.
//
// f_i == 0 is accepted everywhere and yields the degenerate zero-energy
// results (no stored energy, no travel).

#include <span>
#include <vector>

#include "presliding/hysteresis.hpp"

namespace presliding::analysis {

/// Exponent of the reversal-force factor in the linearized exponential.
inline constexpr double kOmegaExponent = 0.6;

/// Zero crossing of the ascending branch through (x_i, f_i).
[[nodiscard]] double zero_crossing(double x_i, double f_i, const FrictionParams& p);

/// Reversal displacement in the frame whose zero crossing sits at the origin.
/// Always <= 0.
[[nodiscard]] double reversal_coordinate(double f_i, const FrictionParams& p);

/// Energy of the ascending branch F_c (1 - exp(-sigma x / F_c)) integrated
/// from 0 to x.
[[nodiscard]] double energy_antiderivative(double x, const FrictionParams& p);

/// Energy recoverable from a reversal at force f_i in [-F_c, 0]; equals the
/// peak kinetic energy of the following half-cycle.
[[nodiscard]] double potential_energy(double f_i, const FrictionParams& p);

/// (1 - ln 2) F_c^2 / sigma, attained at f_i = -F_c.
[[nodiscard]] double potential_energy_bound(const FrictionParams& p);

/// exp(-sigma x / F_c)
[[nodiscard]] double omega(double x, const FrictionParams& p);

/// Straight-line surrogate 1 - K x of omega() over one half-cycle.
struct OmegaApprox {
    double k_slope = 0.0;

    [[nodiscard]] double operator()(double x) const noexcept { return 1.0 - k_slope * x; }
};

/// K = (sigma / F_c) (F_c / (F_c - f_i))^exponent. The exponent is a fixed
/// model constant; the parameter exists so validation can run negative
/// controls against it.
[[nodiscard]] OmegaApprox omega_approx(double f_i, const FrictionParams& p,
                                       double exponent = kOmegaExponent);

/// Next reversal displacement x_{i+1} > 0, the root of
/// energy_antiderivative(x) = potential_energy(f_i). `tol` bounds the
/// residual relative to potential_energy(f_i).
[[nodiscard]] double next_reversal_exact(double f_i, const FrictionParams& p, double tol = 1e-12);

/// Two algebraic forms of the explicit next-reversal predictor.
enum class ApproxForm {
    /// (E_p / F_c) / (1 - (F_c / sigma) r^{3/5}), as printed in the source.
    Printed,
    /// (E_p / F_c) / (1 - r^{3/5}), from substituting K into the linearized
    /// energy balance.
    Rederived,
};

/// Explicit predictor of x_{i+1}. r = F_c / (F_c - f_i). Throws DomainError
/// when the chosen form's denominator is not positive.
[[nodiscard]] double next_reversal_approx(double f_i, const FrictionParams& p,
                                          ApproxForm form = ApproxForm::Rederived);

/// Branch force at x_next for the branch through the reversal at f_i, in
/// the zero-crossing frame. Requires x_next >= reversal_coordinate(f_i).
[[nodiscard]] double next_reversal_force(double x_next, double f_i, const FrictionParams& p);

struct ReversalChainEntry {
    int n = 0;
    double f_n = 0.0;  ///< signed reversal force, alternating sign
    double x_n = 0.0;  ///< reversal displacement in its own branch frame
    double e_p = 0.0;
    double e_d = 0.0;  ///< e_p(n) - e_p(n+1)
};

enum class ChainMode { Exact, Approx };

struct ChainOptions {
    ChainMode mode = ChainMode::Exact;
    ApproxForm form = ApproxForm::Rederived;  ///< used in Approx mode
    double tol = 1e-12;                       ///< used in Exact mode
};

/// Iterates reversal -> next reversal for n_steps half-cycles starting from
/// f_0 in [-F_c, 0). Entry n carries E_d(n), so n_steps predictions yield
/// n_steps entries.
[[nodiscard]] std::vector<ReversalChainEntry> reversal_chain(double f_0, int n_steps,
                                                             const FrictionParams& p,
                                                             const ChainOptions& opts = {});

/// Running sums of e_d along a chain.
[[nodiscard]] std::vector<double> dissipation_partial_sums(std::span<const ReversalChainEntry> chain);

}  // namespace presliding::analysis
