#include "presliding/hysteresis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "presliding/errors.hpp"
#include "presliding/oracle.hpp"

namespace presliding {

void FrictionParams::validate() const {
    if (!(f_c > 0.0) || !std::isfinite(f_c)) {
        throw PreconditionError("FrictionParams: f_c must be > 0");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw PreconditionError("FrictionParams: sigma must be > 0");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw PreconditionError("FrictionParams: gamma must be >= 0");
    }
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw PreconditionError("FrictionParams: mass must be > 0");
    }
}

void require_unit_shape(const FrictionParams& p) {
    p.validate();
    if (!p.has_unit_shape()) {
        throw PreconditionError("closed-form branch formulas require gamma == 1, got " +
                                std::to_string(p.gamma));
    }
}

void LinearSpringParams::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw PreconditionError("LinearSpringParams: k must be > 0");
    }
    if (!(f_c > 0.0) || !std::isfinite(f_c)) {
        throw PreconditionError("LinearSpringParams: f_c must be > 0");
    }
}

double dahl_rate(double f, double v, const FrictionParams& p) {
    if (!(std::abs(f) <= p.f_c)) {
        throw DomainError("dahl_rate: |F| = " + std::to_string(std::abs(f)) +
                          " exceeds F_c = " + std::to_string(p.f_c));
    }
    if (v == 0.0) {
        return 0.0;
    }
    const double s = v > 0.0 ? 1.0 : -1.0;
    const double base = 1.0 - s * f / p.f_c;
    if (p.gamma == 1.0) {
        return p.sigma * base;
    }
    // Full |.|^gamma sgn(.) form; with |F| <= F_c the base is >= 0 and this
    // reduces to the simplified power. sgn(0) = 0 matters for gamma = 0.
    if (base == 0.0) {
        return 0.0;
    }
    return p.sigma * std::copysign(std::pow(std::abs(base), p.gamma), base);
}

double dahl_branch_force(double x, const BranchState& b, const FrictionParams& p) {
    require_unit_shape(p);
    if (!(std::abs(b.f_rev) <= p.f_c)) {
        throw PreconditionError("dahl_branch_force: |f_rev| exceeds F_c");
    }
    const double s = sign_of(b.direction);
    const double travel = s * (x - b.x_rev);
    if (!(travel >= 0.0)) {
        throw PreconditionError("dahl_branch_force: queried behind the reversal point");
    }
    const double f = s * p.f_c - (s * p.f_c - b.f_rev) * std::exp(-p.sigma / p.f_c * travel);
    return std::clamp(f, -p.f_c, p.f_c);
}

BranchState reverse_branch(const BranchState& b, double x_new, const FrictionParams& p) {
    return {x_new, dahl_branch_force(x_new, b, p), flip(b.direction)};
}

double stop_spring_force(double x, const BranchState& b, const LinearSpringParams& sp) noexcept {
    return std::clamp(b.f_rev + sp.k * (x - b.x_rev), -sp.f_c, sp.f_c);
}

double stop_spring_rate(double f, double v, const LinearSpringParams& sp) noexcept {
    if (v == 0.0) {
        return 0.0;
    }
    if ((v > 0.0 && f >= sp.f_c) || (v < 0.0 && f <= -sp.f_c)) {
        return 0.0;
    }
    return sp.k;
}

double loop_dissipation(const BranchState& up, const BranchState& down, double x_lo, double x_hi,
                        const BranchForceMap& force_map, double tol) {
    if (x_lo > x_hi) {
        throw PreconditionError("loop_dissipation: requires x_lo <= x_hi");
    }
    if (up.direction != Direction::Positive || down.direction != Direction::Negative) {
        throw PreconditionError("loop_dissipation: needs an ascending and a descending branch");
    }
    if (up.x_rev > x_lo || down.x_rev < x_hi) {
        throw PreconditionError("loop_dissipation: branches do not cover [x_lo, x_hi]");
    }
    if (x_lo == x_hi) {
        return 0.0;
    }
    const auto gap = [&](double x) { return force_map(x, up) - force_map(x, down); };
    return oracle::integrate(gap, x_lo, x_hi, tol).value;
}

double loop_dissipation(const BranchState& up, const BranchState& down, double x_lo, double x_hi,
                        const FrictionParams& p, double tol) {
    require_unit_shape(p);
    return loop_dissipation(
        up, down, x_lo, x_hi,
        [&p](double x, const BranchState& b) { return dahl_branch_force(x, b, p); }, tol);
}

double loop_dissipation(const BranchState& up, const BranchState& down, double x_lo, double x_hi,
                        const LinearSpringParams& sp, double tol) {
    sp.validate();
    return loop_dissipation(
        up, down, x_lo, x_hi,
        [&sp](double x, const BranchState& b) { return stop_spring_force(x, b, sp); }, tol);
}

}  // namespace presliding
