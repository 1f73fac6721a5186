#pragma once

// Batch kernels over independent parameter points. Each kernel has a serial
// reference and an OpenMP version; both produce bit-identical results
// because every element is computed independently in the same order of
// floating-point operations.

#include <span>
#include <vector>

#include "presliding/oscillator.hpp"
#include "presliding/reversal_analysis.hpp"

namespace presliding::sweep {

/// Row-major grid E_p[r][k] = potential_energy(f_over_fc[k] * F_c) with
/// sigma = ratios[r] * F_c.
[[nodiscard]] std::vector<double> potential_energy_grid_serial(std::span<const double> f_over_fc,
                                                               std::span<const double> ratios,
                                                               double f_c);
[[nodiscard]] std::vector<double> potential_energy_grid_omp(std::span<const double> f_over_fc,
                                                            std::span<const double> ratios,
                                                            double f_c);

struct AuditPoint {
    double f_c = 1.0;
    double sigma = 1.0;
    double f_i = -1.0;
    double omega_exponent = analysis::kOmegaExponent;
};

/// Exact next reversal against both explicit predictor forms, plus the
/// fit of the linearized exponential on [0, x_exact].
struct AuditRow {
    AuditPoint point;
    double x_exact = 0.0;
    double x_printed = 0.0;      ///< NaN when the printed form is degenerate
    double x_rederived = 0.0;    ///< NaN when degenerate
    double dev_printed = 0.0;    ///< (x_printed - x_exact) / x_exact
    double dev_rederived = 0.0;
    double omega_max_gap = 0.0;  ///< max |omega - omega*| over sampled [0, x_exact]
    double omega_end_gap = 0.0;  ///< |omega - omega*| at x_exact
};

/// Sample count used for the omega envelope.
inline constexpr int kEnvelopeSamples = 2001;

[[nodiscard]] AuditRow audit_point(const AuditPoint& point);
[[nodiscard]] std::vector<AuditRow> predictor_audit_serial(std::span<const AuditPoint> points);
[[nodiscard]] std::vector<AuditRow> predictor_audit_omp(std::span<const AuditPoint> points);

[[nodiscard]] std::vector<Trajectory> simulate_batch_serial(std::span<const SimConfig> configs);
[[nodiscard]] std::vector<Trajectory> simulate_batch_omp(std::span<const SimConfig> configs);

struct ChainJob {
    double f_0 = -1.0;
    int n_steps = 60;
    FrictionParams params;
    analysis::ChainOptions options;
};

using Chain = std::vector<analysis::ReversalChainEntry>;

[[nodiscard]] std::vector<Chain> chain_batch_serial(std::span<const ChainJob> jobs);
[[nodiscard]] std::vector<Chain> chain_batch_omp(std::span<const ChainJob> jobs);

/// Number of threads the OpenMP kernels would use (1 without OpenMP).
[[nodiscard]] int max_threads() noexcept;

}  // namespace presliding::sweep
