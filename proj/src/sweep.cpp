#include "presliding/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "presliding/errors.hpp"

namespace presliding::sweep {

namespace {

template <class Out, class In, class Fn>
std::vector<Out> map_serial(std::span<const In> in, Fn&& fn) {
    std::vector<Out> out;
    out.reserve(in.size());
    for (const auto& item : in) {
        out.push_back(fn(item));
    }
    return out;
}

// Exceptions may not leave an OpenMP region; the first one (by index) is
// rethrown after the loop so the error matches the serial kernel.
template <class Out, class In, class Fn>
std::vector<Out> map_omp(std::span<const In> in, Fn&& fn) {
    const auto n = static_cast<std::ptrdiff_t>(in.size());
    std::vector<Out> out(in.size());
    std::vector<std::exception_ptr> errors(in.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(in[static_cast<std::size_t>(i)]);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

FrictionParams grid_params(double ratio, double f_c) {
    FrictionParams p;
    p.f_c = f_c;
    p.sigma = ratio * f_c;
    return p;
}

double try_approx(double f_i, const FrictionParams& p, analysis::ApproxForm form) {
    try {
        return analysis::next_reversal_approx(f_i, p, form);
    } catch (const DomainError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

std::vector<double> potential_energy_grid_serial(std::span<const double> f_over_fc,
                                                 std::span<const double> ratios, double f_c) {
    std::vector<double> out(ratios.size() * f_over_fc.size());
    for (std::size_t r = 0; r < ratios.size(); ++r) {
        const FrictionParams p = grid_params(ratios[r], f_c);
        for (std::size_t k = 0; k < f_over_fc.size(); ++k) {
            out[r * f_over_fc.size() + k] = analysis::potential_energy(f_over_fc[k] * f_c, p);
        }
    }
    return out;
}

std::vector<double> potential_energy_grid_omp(std::span<const double> f_over_fc,
                                              std::span<const double> ratios, double f_c) {
    const std::size_t cols = f_over_fc.size();
    const auto total = static_cast<std::ptrdiff_t>(ratios.size() * cols);
    std::vector<double> out(ratios.size() * cols);
    // Parameters are validated up front so the parallel loop cannot throw.
    for (double ratio : ratios) {
        grid_params(ratio, f_c).validate();
    }
    for (double f : f_over_fc) {
        if (!(f >= -1.0 && f <= 0.0)) {
            throw DomainError("potential_energy_grid: normalized force outside [-1, 0]");
        }
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
        const auto i = static_cast<std::size_t>(idx);
        const FrictionParams p = grid_params(ratios[i / cols], f_c);
        out[i] = analysis::potential_energy(f_over_fc[i % cols] * f_c, p);
    }
    return out;
}

AuditRow audit_point(const AuditPoint& point) {
    FrictionParams p;
    p.f_c = point.f_c;
    p.sigma = point.sigma;

    AuditRow row;
    row.point = point;
    row.x_exact = analysis::next_reversal_exact(point.f_i, p);
    row.x_printed = try_approx(point.f_i, p, analysis::ApproxForm::Printed);
    row.x_rederived = try_approx(point.f_i, p, analysis::ApproxForm::Rederived);
    row.dev_printed = (row.x_printed - row.x_exact) / row.x_exact;
    row.dev_rederived = (row.x_rederived - row.x_exact) / row.x_exact;

    const auto approx = analysis::omega_approx(point.f_i, p, point.omega_exponent);
    for (int k = 0; k < kEnvelopeSamples; ++k) {
        const double x = row.x_exact * k / (kEnvelopeSamples - 1);
        row.omega_max_gap = std::max(row.omega_max_gap, std::abs(analysis::omega(x, p) - approx(x)));
    }
    row.omega_end_gap = std::abs(analysis::omega(row.x_exact, p) - approx(row.x_exact));
    return row;
}

std::vector<AuditRow> predictor_audit_serial(std::span<const AuditPoint> points) {
    return map_serial<AuditRow>(points, audit_point);
}

std::vector<AuditRow> predictor_audit_omp(std::span<const AuditPoint> points) {
    return map_omp<AuditRow>(points, audit_point);
}

std::vector<Trajectory> simulate_batch_serial(std::span<const SimConfig> configs) {
    return map_serial<Trajectory>(configs, [](const SimConfig& c) { return simulate(c); });
}

std::vector<Trajectory> simulate_batch_omp(std::span<const SimConfig> configs) {
    return map_omp<Trajectory>(configs, [](const SimConfig& c) { return simulate(c); });
}

namespace {

Chain run_chain(const ChainJob& job) {
    return analysis::reversal_chain(job.f_0, job.n_steps, job.params, job.options);
}

}  // namespace

std::vector<Chain> chain_batch_serial(std::span<const ChainJob> jobs) {
    return map_serial<Chain>(jobs, run_chain);
}

std::vector<Chain> chain_batch_omp(std::span<const ChainJob> jobs) {
    return map_omp<Chain>(jobs, run_chain);
}

int max_threads() noexcept {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace presliding::sweep
