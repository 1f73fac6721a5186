#include "presliding/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "presliding/errors.hpp"

namespace presliding::oracle {

namespace {

// Panels are accepted only after this many halvings, so integrands that
// happen to look flat on the first five nodes are still resolved.
constexpr int kMinQuadDepth = 2;

struct Panel {
    double a, m, b;
    double fa, fm, fb;
    double whole;
};

class Simpson {
public:
    explicit Simpson(const ScalarFn& f) : f_(f) {}

    double eval(double x) {
        ++evaluations_;
        const double y = f_(x);
        if (!std::isfinite(y)) {
            throw DomainError("integrate: integrand not finite at x = " + std::to_string(x));
        }
        return y;
    }

    static double rule(double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double refine(const Panel& p, double eps, int depth) {
        const double lm = 0.5 * (p.a + p.m);
        const double rm = 0.5 * (p.m + p.b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = rule(p.a, p.m, p.fa, flm, p.fm);
        const double right = rule(p.m, p.b, p.fm, frm, p.fb);
        const double delta = left + right - p.whole;

        if (depth >= kMinQuadDepth && std::abs(delta) <= 15.0 * eps) {
            error_ += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        if (depth >= kMaxQuadDepth) {
            throw ConvergenceError("integrate: recursion depth cap exceeded near x = " +
                                   std::to_string(p.m));
        }
        return refine({p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * eps, depth + 1) +
               refine({p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * eps, depth + 1);
    }

    [[nodiscard]] std::size_t evaluations() const { return evaluations_; }
    [[nodiscard]] double error() const { return error_; }

private:
    const ScalarFn& f_;
    std::size_t evaluations_ = 0;
    double error_ = 0.0;
};

}  // namespace

QuadResult integrate(const ScalarFn& f, double a, double b, double rel_tol) {
    if (!(a <= b)) {
        throw PreconditionError("integrate: requires a <= b");
    }
    if (!(rel_tol > 0.0)) {
        throw PreconditionError("integrate: rel_tol must be positive");
    }

    Simpson simpson(f);
    const double m = 0.5 * (a + b);
    const double fa = simpson.eval(a);
    const double fm = simpson.eval(m);
    const double fb = simpson.eval(b);
    if (a == b) {
        return {0.0, 0.0, simpson.evaluations()};
    }

    const double whole = Simpson::rule(a, b, fa, fm, fb);
    const double magnitude = Simpson::rule(a, b, std::abs(fa), std::abs(fm), std::abs(fb));
    // Cancelling integrands (loop differences) have |value| ~ 0; the
    // magnitude term keeps the target above rounding noise.
    const double eps = std::max({rel_tol * std::abs(whole), 1e-15,
                                 16.0 * std::numeric_limits<double>::epsilon() * magnitude});

    QuadResult out;
    out.value = simpson.refine({a, m, b, fa, fm, fb, whole}, eps, 0);
    out.error_estimate = simpson.error();
    out.evaluations = simpson.evaluations();
    return out;
}

double find_root(const ScalarFn& f, double a, double b, double tol) {
    if (a > b) {
        std::swap(a, b);
    }
    double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) {
        return a;
    }
    if (fb == 0.0) {
        return b;
    }
    if (std::signbit(fa) == std::signbit(fb)) {
        throw PreconditionError("find_root: no sign change on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]");
    }

    while (b - a >= tol) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) {
            break;  // bracket at floating-point resolution
        }
        const double fmid = f(mid);
        if (fmid == 0.0) {
            return mid;
        }
        if (std::signbit(fmid) == std::signbit(fa)) {
            a = mid;
            fa = fmid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

double derivative(const ScalarFn& f, double x, double h) {
    if (!(h > 0.0)) {
        throw PreconditionError("derivative: step must be positive");
    }
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double default_step(double x) noexcept { return std::max(1e-6, 1e-6 * std::abs(x)); }

}  // namespace presliding::oracle
