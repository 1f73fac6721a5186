#pragma once

// Restoring-force maps with memory: the Dahl friction model (differential
// and algebraic branch forms) and the saturating linear spring (stop-type
// operator) used as the zero-dissipation reference.

#include <functional>

namespace presliding {

/// Sign of velocity on a hysteresis branch. Never zero.
enum class Direction : int { Negative = -1, Positive = 1 };

[[nodiscard]] constexpr double sign_of(Direction d) noexcept {
    return d == Direction::Positive ? 1.0 : -1.0;
}

[[nodiscard]] constexpr Direction flip(Direction d) noexcept {
    return d == Direction::Positive ? Direction::Negative : Direction::Positive;
}

[[nodiscard]] constexpr Direction direction_of(double v) noexcept {
    return v < 0.0 ? Direction::Negative : Direction::Positive;
}

/// Dahl model constants.
struct FrictionParams {
    double f_c = 1.0;    ///< Coulomb friction level, > 0
    double sigma = 1.0;  ///< rest stiffness dF/dx at F = 0, > 0
    double gamma = 1.0;  ///< shape exponent, >= 0
    double mass = 1.0;   ///< oscillator mass, > 0

    /// Throws PreconditionError on a violated invariant.
    void validate() const;

    /// The closed-form branch and energy formulas only exist for gamma == 1.
    [[nodiscard]] bool has_unit_shape() const noexcept { return gamma == 1.0; }
};

/// Throws PreconditionError unless p is valid and gamma == 1.
void require_unit_shape(const FrictionParams& p);

/// Memory of one hysteresis branch: the last reversal point and the
/// direction of motion since then.
struct BranchState {
    double x_rev = 0.0;
    double f_rev = 0.0;
    Direction direction = Direction::Positive;

    /// Returns a copy translated by `dx` along the displacement axis.
    [[nodiscard]] BranchState shifted(double dx) const noexcept {
        return {x_rev + dx, f_rev, direction};
    }
};

/// Saturating linear spring, the gamma = 0 limit of the Dahl model.
struct LinearSpringParams {
    double k = 1.0;    ///< stiffness, > 0
    double f_c = 1.0;  ///< saturation force, > 0

    void validate() const;
};

/// dF/dx of the Dahl model, sigma * (1 - sgn(v) F / F_c)^gamma.
/// Returns 0 for v == 0. Throws DomainError if |f| > F_c.
[[nodiscard]] double dahl_rate(double f, double v, const FrictionParams& p);

/// Force on the Dahl branch that started at `b` (gamma == 1 only), evaluated
/// at a displacement ahead of the reversal point.
[[nodiscard]] double dahl_branch_force(double x, const BranchState& b, const FrictionParams& p);

/// Starts a new branch at x_new with the force the current branch has there.
[[nodiscard]] BranchState reverse_branch(const BranchState& b, double x_new, const FrictionParams& p);

/// Stop-operator force: f_rev + k (x - x_rev), clamped to [-f_c, f_c].
[[nodiscard]] double stop_spring_force(double x, const BranchState& b, const LinearSpringParams& sp) noexcept;

/// dF/dx of the stop operator: k, or 0 while saturated and pushing further.
[[nodiscard]] double stop_spring_rate(double f, double v, const LinearSpringParams& sp) noexcept;

/// Force of a branch map at x given the branch memory.
using BranchForceMap = std::function<double(double, const BranchState&)>;

/// Net energy dissipated over one reversal cycle:
/// integral over [x_lo, x_hi] of (ascending - descending) branch force.
/// `up` must ascend and `down` descend, both defined over the interval.
/// Integration is done by the adaptive quadrature oracle at relative
/// tolerance `tol`.
[[nodiscard]] double loop_dissipation(const BranchState& up, const BranchState& down, double x_lo,
                                      double x_hi, const BranchForceMap& force_map, double tol);

[[nodiscard]] double loop_dissipation(const BranchState& up, const BranchState& down, double x_lo,
                                      double x_hi, const FrictionParams& p, double tol);

[[nodiscard]] double loop_dissipation(const BranchState& up, const BranchState& down, double x_lo,
                                      double x_hi, const LinearSpringParams& sp, double tol);

}  // namespace presliding
