#pragma once

// Brute-force numerical kernels used to certify the closed forms.
// Nothing here may depend on the analytic reversal calculus.

#include <cstddef>
#include <functional>

namespace presliding::oracle {

using ScalarFn = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Maximum bisection depth of the adaptive Simpson recursion.
inline constexpr int kMaxQuadDepth = 50;

/// Adaptive Simpson quadrature of f over [a, b]. Throws ConvergenceError if
/// any panel needs more than kMaxQuadDepth halvings, PreconditionError if
/// a > b.
[[nodiscard]] QuadResult integrate(const ScalarFn& f, double a, double b, double rel_tol);

/// Bisection root of f on [a, b]; requires f(a) f(b) <= 0. Stops once the
/// bracket is narrower than tol (or cannot shrink further) and returns its
/// midpoint.
[[nodiscard]] double find_root(const ScalarFn& f, double a, double b, double tol);

/// Central difference (f(x+h) - f(x-h)) / 2h.
[[nodiscard]] double derivative(const ScalarFn& f, double x, double h);

/// max(1e-6, 1e-6 |x|)
[[nodiscard]] double default_step(double x) noexcept;

}  // namespace presliding::oracle
