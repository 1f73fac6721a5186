#pragma once

// Oracle cross-checks of every closed form and simulation invariant, one
// function per check. Each returns a CheckResult; run_validation() runs
// them all and collects the predictor comparison table.

#include <string>
#include <vector>

#include "presliding/reversal_analysis.hpp"
#include "presliding/sweep.hpp"

namespace presliding::validation {

struct CheckResult {
    std::string id;
    std::string description;
    bool passed = false;
    double measured = 0.0;   ///< worst observed error or statistic
    double tolerance = 0.0;  ///< bound the measurement is compared against
    std::string detail;
};

/// Regression bounds frozen from oracle measurements.
inline constexpr double kApproxRederivedMaxDeviation = 0.1212;
inline constexpr double kOmegaEnvelopeMaxGap = 0.0660;
inline constexpr double kOmegaEndpointMaxGap = 0.0070;
inline constexpr int kSeriesIndexAt99Percent = 17;

struct ValidationOptions {
    /// Exponent handed to omega_approx; changing it is a negative control.
    double omega_exponent = analysis::kOmegaExponent;
    /// Use the OpenMP kernels for the batch work.
    bool parallel = true;
};

/// Parameter grid of the force-displacement figures: sigma/F_c in {1, 2, 8}
/// with F_c = 1, then F_c in {1, 1.5, 2} with sigma = 10; F_i = -F_c x
/// {0.2, ..., 1.0} throughout.
[[nodiscard]] std::vector<sweep::AuditPoint> approximation_grid(double omega_exponent);

struct ApproxSummary {
    std::vector<sweep::AuditRow> rows;
    double max_dev_printed = 0.0;    ///< over rows where the printed form exists
    double max_dev_rederived = 0.0;
    int printed_degenerate = 0;      ///< rows with a non-positive printed denominator
    std::string better_form;         ///< "rederived" or "printed"
};

[[nodiscard]] ApproxSummary summarize_approximation(std::vector<sweep::AuditRow> rows);

[[nodiscard]] CheckResult check_max_potential_energy();
[[nodiscard]] CheckResult check_quadrature_equivalence();
[[nodiscard]] CheckResult check_form_consistency();
[[nodiscard]] CheckResult check_stop_spring_conservative();
[[nodiscard]] CheckResult check_clockwise_dissipation();
[[nodiscard]] CheckResult check_energy_balance(const std::vector<Trajectory>& runs);
[[nodiscard]] CheckResult check_equal_areas(const std::vector<Trajectory>& runs);
[[nodiscard]] CheckResult check_chain_vs_simulation(const Trajectory& run);
[[nodiscard]] CheckResult check_series_convergence();
[[nodiscard]] CheckResult check_monotone_decay(const std::vector<sweep::Chain>& chains,
                                               const std::vector<Trajectory>& runs);
[[nodiscard]] CheckResult check_reversal_frequency(const std::vector<Trajectory>& runs);
[[nodiscard]] CheckResult check_approximation_audit(const ApproxSummary& summary);
[[nodiscard]] CheckResult check_omega_envelope(const ApproxSummary& summary);
[[nodiscard]] CheckResult check_potential_energy_bound(const std::vector<sweep::ChainJob>& jobs,
                                                       const std::vector<sweep::Chain>& chains);

/// Configs of the simulation checks: F_c = m = 1, x0 = f0 = 0, v0 = 0.5,
/// sigma/F_c in {10, 100, 1000}, 20 reversals each.
[[nodiscard]] std::vector<SimConfig> validation_runs();

struct ValidationReport {
    std::vector<CheckResult> checks;
    ApproxSummary approximation;

    [[nodiscard]] bool all_passed() const noexcept;
    [[nodiscard]] const CheckResult& find(const std::string& id) const;
};

[[nodiscard]] ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace presliding::validation
