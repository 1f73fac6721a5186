#include "presliding/reversal_analysis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "presliding/errors.hpp"

namespace presliding::analysis {

namespace {

// Below this argument the closed forms lose digits to cancellation and the
// truncated Taylor series is exact to double precision.
constexpr double kSeriesCutoff = 1e-3;

// a - ln(1 + a)
double a_minus_log1p(double a) {
    if (std::abs(a) < kSeriesCutoff) {
        const double a2 = a * a;
        return a2 * (0.5 - a / 3.0 + a2 / 4.0 - a2 * a / 5.0 + a2 * a2 / 6.0);
    }
    return a - std::log1p(a);
}

// u + exp(-u) - 1
double u_plus_expm1(double u) {
    if (std::abs(u) < kSeriesCutoff) {
        const double u2 = u * u;
        return u2 * (0.5 - u / 6.0 + u2 / 24.0 - u2 * u / 120.0 + u2 * u2 / 720.0);
    }
    return u + std::expm1(-u);
}

// Normalized reversal force magnitude a = -f_i / F_c in [0, 1].
double normalized_magnitude(double f_i, const FrictionParams& p, const char* who) {
    require_unit_shape(p);
    if (!(f_i >= -p.f_c && f_i <= 0.0)) {
        throw DomainError(std::string(who) + ": reversal force must lie in [-F_c, 0], got " +
                          std::to_string(f_i));
    }
    return -f_i / p.f_c;
}

}  // namespace

double zero_crossing(double x_i, double f_i, const FrictionParams& p) {
    const double a = normalized_magnitude(f_i, p, "zero_crossing");
    return x_i + p.f_c / p.sigma * std::log1p(a);
}

double reversal_coordinate(double f_i, const FrictionParams& p) {
    const double a = normalized_magnitude(f_i, p, "reversal_coordinate");
    return -p.f_c / p.sigma * std::log1p(a);
}

double energy_antiderivative(double x, const FrictionParams& p) {
    require_unit_shape(p);
    const double scale = p.f_c * p.f_c / p.sigma;
    return scale * u_plus_expm1(p.sigma / p.f_c * x);
}

double potential_energy(double f_i, const FrictionParams& p) {
    const double a = normalized_magnitude(f_i, p, "potential_energy");
    return p.f_c * p.f_c / p.sigma * a_minus_log1p(a);
}

double potential_energy_bound(const FrictionParams& p) {
    require_unit_shape(p);
    return (1.0 - std::numbers::ln2) * p.f_c * p.f_c / p.sigma;
}

double omega(double x, const FrictionParams& p) {
    require_unit_shape(p);
    return std::exp(-p.sigma / p.f_c * x);
}

OmegaApprox omega_approx(double f_i, const FrictionParams& p, double exponent) {
    const double a = normalized_magnitude(f_i, p, "omega_approx");
    // (F_c / (F_c - f_i))^e = (1 + a)^-e
    return {p.sigma / p.f_c * std::exp(-exponent * std::log1p(a))};
}

double next_reversal_exact(double f_i, const FrictionParams& p, double tol) {
    const double a = normalized_magnitude(f_i, p, "next_reversal_exact");
    const double target = a_minus_log1p(a);
    if (target == 0.0) {
        return 0.0;
    }

    // Dimensionless u = sigma x / F_c. u + e^-u - 1 <= u^2 / 2, so the root
    // is at least sqrt(2 target).
    double lo = std::sqrt(2.0 * target);
    double hi = 2.0 * lo;
    for (int grow = 0; u_plus_expm1(hi) < target; ++grow) {
        if (grow > 200) {
            throw ConvergenceError("next_reversal_exact: failed to bracket the root");
        }
        lo = hi;
        hi *= 2.0;
    }

    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (u_plus_expm1(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double u = 0.5 * (lo + hi);
    if (std::abs(u_plus_expm1(u) - target) > tol * target) {
        throw ConvergenceError("next_reversal_exact: residual above tolerance");
    }
    return p.f_c / p.sigma * u;
}

double next_reversal_approx(double f_i, const FrictionParams& p, ApproxForm form) {
    const double a = normalized_magnitude(f_i, p, "next_reversal_approx");
    if (a == 0.0) {
        return 0.0;
    }
    const double log_r = -std::log1p(a);  // ln(F_c / (F_c - f_i))
    double denominator = 0.0;
    switch (form) {
        case ApproxForm::Printed:
            denominator = 1.0 - p.f_c / p.sigma * std::exp(kOmegaExponent * log_r);
            break;
        case ApproxForm::Rederived:
            denominator = -std::expm1(kOmegaExponent * log_r);
            break;
    }
    if (!(denominator > 0.0)) {
        throw DomainError("next_reversal_approx: degenerate denominator " +
                          std::to_string(denominator));
    }
    return potential_energy(f_i, p) / p.f_c / denominator;
}

double next_reversal_force(double x_next, double f_i, const FrictionParams& p) {
    const double x_i = reversal_coordinate(f_i, p);
    if (!(x_next >= x_i)) {
        throw PreconditionError("next_reversal_force: x_next lies behind the reversal point");
    }
    // F_c - (F_c - f_i) exp(-sigma (x - x_i) / F_c) with (F_c - f_i) exp(sigma x_i / F_c) = F_c
    return -p.f_c * std::expm1(-p.sigma / p.f_c * x_next);
}

std::vector<ReversalChainEntry> reversal_chain(double f_0, int n_steps, const FrictionParams& p,
                                               const ChainOptions& opts) {
    if (n_steps < 1) {
        throw PreconditionError("reversal_chain: n_steps must be >= 1");
    }
    if (!(f_0 >= -p.f_c && f_0 <= 0.0)) {
        throw DomainError("reversal_chain: f_0 must lie in [-F_c, 0)");
    }

    std::vector<ReversalChainEntry> chain;
    chain.reserve(static_cast<std::size_t>(n_steps));

    double magnitude = -f_0;
    double sign = -1.0;
    double e_p = potential_energy(-magnitude, p);
    for (int n = 0; n < n_steps; ++n) {
        const double f_frame = -magnitude;  // ascending-branch frame
        const double x_next = opts.mode == ChainMode::Exact
                                  ? next_reversal_exact(f_frame, p, opts.tol)
                                  : next_reversal_approx(f_frame, p, opts.form);
        const double next_magnitude = next_reversal_force(x_next, f_frame, p);
        const double e_p_next = potential_energy(-next_magnitude, p);

        chain.push_back({n, sign * magnitude, -sign * reversal_coordinate(f_frame, p), e_p,
                         e_p - e_p_next});

        magnitude = next_magnitude;
        e_p = e_p_next;
        sign = -sign;
    }
    return chain;
}

std::vector<double> dissipation_partial_sums(std::span<const ReversalChainEntry> chain) {
    std::vector<double> sums;
    sums.reserve(chain.size());
    double running = 0.0;
    for (const auto& entry : chain) {
        running += entry.e_d;
        sums.push_back(running);
    }
    return sums;
}

}  // namespace presliding::analysis
