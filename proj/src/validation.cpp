#include "presliding/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "presliding/hysteresis.hpp"
#include "presliding/oracle.hpp"

namespace presliding::validation {

namespace {

constexpr double kPaperMaxEnergy = 0.3069;
constexpr double kQuadTol = 1e-12;

FrictionParams dahl(double f_c, double sigma) {
    FrictionParams p;
    p.f_c = f_c;
    p.sigma = sigma;
    return p;
}

CheckResult make(std::string id, std::string description, bool passed, double measured,
                 double tolerance, std::string detail = {}) {
    return {std::move(id), std::move(description), passed, measured, tolerance, std::move(detail)};
}

// Time of the force zero crossing between two reversal instants: the
// sample of smallest |F| (crossings are stored as event samples).
double crossing_time(const Trajectory& traj, double t_lo, double t_hi) {
    double best_t = t_lo;
    double best_f = std::numeric_limits<double>::infinity();
    for (const auto& s : traj.samples) {
        if (s.t > t_lo && s.t < t_hi && std::abs(s.f) < best_f) {
            best_f = std::abs(s.f);
            best_t = s.t;
        }
    }
    return best_t;
}

std::string ratio_label(const Trajectory& traj) {
    std::ostringstream out;
    out << "sigma/F_c=" << traj.config.params.sigma / traj.config.params.f_c;
    return out.str();
}

}  // namespace

std::vector<sweep::AuditPoint> approximation_grid(double omega_exponent) {
    std::vector<sweep::AuditPoint> points;
    for (double sigma : {1.0, 2.0, 8.0}) {
        for (int k = 1; k <= 5; ++k) {
            points.push_back({1.0, sigma, -0.2 * k, omega_exponent});
        }
    }
    for (double f_c : {1.0, 1.5, 2.0}) {
        for (int k = 1; k <= 5; ++k) {
            points.push_back({f_c, 10.0, -0.2 * k * f_c, omega_exponent});
        }
    }
    return points;
}

ApproxSummary summarize_approximation(std::vector<sweep::AuditRow> rows) {
    ApproxSummary s;
    s.rows = std::move(rows);
    for (const auto& row : s.rows) {
        if (std::isnan(row.x_printed)) {
            ++s.printed_degenerate;
        } else {
            s.max_dev_printed = std::max(s.max_dev_printed, std::abs(row.dev_printed));
        }
        s.max_dev_rederived = std::max(s.max_dev_rederived, std::abs(row.dev_rederived));
    }
    s.better_form = s.max_dev_rederived <= s.max_dev_printed ? "rederived" : "printed";
    return s;
}

CheckResult check_max_potential_energy() {
    double worst = 0.0;
    for (double f_c : {1.0, 2.5}) {
        for (double sigma : {1.0, 10.0, 1000.0}) {
            const auto p = dahl(f_c, sigma);
            const double normalized = analysis::potential_energy(-f_c, p) * sigma / (f_c * f_c);
            worst = std::max(worst, std::abs(normalized - kPaperMaxEnergy) / kPaperMaxEnergy);
        }
    }
    return make("max_potential_energy", "E_p(-F_c) = 0.3069 F_c^2/sigma", worst < 5e-4, worst, 5e-4);
}

CheckResult check_quadrature_equivalence() {
    double worst = 0.0;
    for (double ratio : {1.0, 10.0, 100.0, 1000.0}) {
        const auto p = dahl(1.0, ratio);
        for (int k = 1; k <= 10; ++k) {
            const double f_i = -0.1 * k;
            const BranchState b{analysis::reversal_coordinate(f_i, p), f_i, Direction::Positive};
            const auto branch = [&](double x) { return dahl_branch_force(x, b, p); };
            const double quad = -oracle::integrate(branch, b.x_rev, 0.0, kQuadTol).value;
            const double closed = analysis::potential_energy(f_i, p);
            worst = std::max(worst, std::abs(quad - closed) / closed);
        }
    }
    return make("quadrature_equivalence", "closed-form E_p vs quadrature of the branch, 40 points",
                worst < 1e-8, worst, 1e-8);
}

CheckResult check_form_consistency() {
    double worst = 0.0;
    for (double ratio : {1.0, 10.0, 100.0}) {
        const auto p = dahl(1.0, ratio);
        const BranchState b{0.0, -p.f_c, Direction::Positive};
        for (int k = 0; k < 10; ++k) {
            const double f = p.f_c * (-0.9 + 0.2 * k);
            const double x = p.f_c / p.sigma * std::log(2.0 * p.f_c / (p.f_c - f));
            const double fd = oracle::derivative([&](double xx) { return dahl_branch_force(xx, b, p); },
                                                 x, oracle::default_step(x));
            const double rate = dahl_rate(f, 1.0, p);
            worst = std::max(worst, std::abs(fd - rate) / rate);
        }
    }
    return make("form_consistency", "d/dx of the algebraic branch vs the differential rate, 10x3 grid",
                worst < 1e-6, worst, 1e-6);
}

CheckResult check_stop_spring_conservative() {
    double worst = 0.0;
    for (double k : {0.5, 1.0, 10.0}) {
        for (double amp : {0.1, 1.0, 3.0}) {
            const LinearSpringParams sp{k, 2.0 * k * amp + 1.0};
            const BranchState up{-amp, -k * amp, Direction::Positive};
            const BranchState down{amp, stop_spring_force(amp, up, sp), Direction::Negative};
            const double delta = loop_dissipation(up, down, -amp, amp, sp, kQuadTol);
            worst = std::max(worst, std::abs(delta) / (k * amp * amp));
        }
    }
    return make("stop_spring_conservative", "|loop area| of unsaturated stop-spring cycles / (k x_amp^2)",
                worst < 1e-10, worst, 1e-10);
}

CheckResult check_clockwise_dissipation() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double smallest = std::numeric_limits<double>::infinity();
    int failures = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = dahl(0.5 + 1.5 * unit(rng), std::pow(10.0, 3.0 * unit(rng)));
        const double x_lo = 2.0 * unit(rng) - 1.0;
        const double stroke = p.f_c / p.sigma * (0.05 + 5.0 * unit(rng));
        const double x_hi = x_lo + stroke;
        // Closed cycle: the descending branch returns to the start exactly
        // when the turning forces are +-F_c tanh(sigma stroke / 2 F_c).
        const double f_star = p.f_c * std::tanh(0.5 * p.sigma * stroke / p.f_c);
        const BranchState up{x_lo, -f_star, Direction::Positive};
        const auto down = reverse_branch(up, x_hi, p);
        const double delta = loop_dissipation(up, down, x_lo, x_hi, p, kQuadTol);
        const double scaled = delta * p.sigma / (p.f_c * p.f_c);
        smallest = std::min(smallest, scaled);
        if (!(delta > 0.0)) {
            ++failures;
        }
    }
    std::ostringstream detail;
    detail << failures << " of 20 cycles with non-positive area";
    return make("clockwise_dissipation", "min loop area of 20 random closed Dahl cycles (units F_c^2/sigma)",
                failures == 0, smallest, 0.0, detail.str());
}

std::vector<SimConfig> validation_runs() {
    std::vector<SimConfig> configs;
    for (double ratio : {10.0, 100.0, 1000.0}) {
        SimConfig cfg;
        cfg.params = dahl(1.0, ratio);
        cfg.v0 = 0.5;
        cfg.max_reversals = 20;
        configs.push_back(cfg);
    }
    return configs;
}

CheckResult check_energy_balance(const std::vector<Trajectory>& runs) {
    double drift = 0.0;
    double v_ratio = 0.0;  // |v| at reversals relative to the tolerance
    std::size_t reversals = 0;
    for (const auto& traj : runs) {
        const double e0 = traj.config.initial_kinetic_energy();
        for (const auto& s : traj.samples) {
            drift = std::max(drift, std::abs(kinetic_energy(s, traj.config.params) + s.e_f_cum - e0) / e0);
        }
        const double tol_v = reversal_velocity_tolerance(traj.config);
        for (const auto& r : traj.reversals) {
            v_ratio = std::max(v_ratio, std::abs(sample_at(traj, r.t_i).v) / tol_v);
        }
        reversals += traj.reversals.size();
    }
    std::ostringstream detail;
    detail << "max |v| at " << reversals << " reversals = " << v_ratio << " x 1e-9 max(|v0|,1)";
    const bool enough = reversals >= 10 * runs.size() && !runs.empty();
    return make("energy_balance", "relative drift of (m/2)v^2 + E_f along trajectories",
                drift < 1e-6 && v_ratio < 1.0 && enough, drift, 1e-6, detail.str());
}

CheckResult check_equal_areas(const std::vector<Trajectory>& runs) {
    double worst = 0.0;
    std::size_t spans = 0;
    for (const auto& traj : runs) {
        const auto& rev = traj.reversals;
        for (std::size_t i = 0; i + 1 < rev.size(); ++i) {
            const double t_0 = crossing_time(traj, rev[i].t_i, rev[i + 1].t_i);
            const double first = restoring_energy_between(traj, rev[i].t_i, t_0);
            const double second = restoring_energy_between(traj, t_0, rev[i + 1].t_i);
            worst = std::max(worst, std::abs(first + second) / rev[i].e_p);
            ++spans;
        }
    }
    std::ostringstream detail;
    detail << spans << " half-cycles";
    return make("equal_areas", "|E_f(t_i,t_0) + E_f(t_0,t_i+1)| / E_p(i)", worst < 1e-5 && spans > 0,
                worst, 1e-5, detail.str());
}

CheckResult check_chain_vs_simulation(const Trajectory& run) {
    constexpr std::size_t kCompared = 10;
    const auto& rev = run.reversals;
    if (rev.size() < kCompared) {
        return make("chain_vs_simulation", "exact chain vs simulated reversal forces", false, 0.0, 1e-3,
                    "simulation recorded fewer than 10 reversals");
    }
    analysis::ChainOptions opts;
    const auto chain = analysis::reversal_chain(-std::abs(rev[0].f_i), kCompared, run.config.params, opts);
    double worst = 0.0;
    bool alternating = true;
    for (std::size_t n = 0; n < kCompared; ++n) {
        const double sim = std::abs(rev[n].f_i);
        worst = std::max(worst, std::abs(std::abs(chain[n].f_n) - sim) / sim);
        if (n > 0 && std::signbit(rev[n].f_i) == std::signbit(rev[n - 1].f_i)) {
            alternating = false;
        }
    }
    return make("chain_vs_simulation",
                "exact chain vs simulated reversal forces, first 10 reversals, " + ratio_label(run),
                worst < 1e-3 && alternating, worst, 1e-3,
                alternating ? "" : "simulated reversal forces do not alternate in sign");
}

CheckResult check_series_convergence() {
    const auto p = dahl(1.0, 10.0);
    const auto chain = analysis::reversal_chain(-1.0, 60, p);
    const auto sums = analysis::dissipation_partial_sums(chain);
    const double e0 = chain.front().e_p;
    bool monotone = true;
    bool bounded = true;
    int reached = -1;
    for (std::size_t n = 0; n < sums.size(); ++n) {
        monotone = monotone && (n == 0 || sums[n] > sums[n - 1]);
        bounded = bounded && sums[n] <= e0;
        if (reached < 0 && sums[n] >= 0.99 * e0) {
            reached = static_cast<int>(n);
        }
    }
    std::ostringstream detail;
    detail << "99% of E_p(0) first reached at N = " << reached << " (frozen " << kSeriesIndexAt99Percent
           << "); sum over 60 steps = " << sums.back() / e0 << " E_p(0)";
    const double at_n = sums[kSeriesIndexAt99Percent] / e0;
    return make("series_convergence", "partial sums of E_d / E_p(0) at the frozen N, sigma/F_c=10",
                monotone && bounded && reached == kSeriesIndexAt99Percent, at_n, 0.99, detail.str());
}

CheckResult check_monotone_decay(const std::vector<sweep::Chain>& chains,
                                 const std::vector<Trajectory>& runs) {
    int violations = 0;
    std::size_t checked = 0;
    for (const auto& chain : chains) {
        for (std::size_t n = 0; n < chain.size(); ++n) {
            violations += !(chain[n].e_p > 0.0);
            if (n > 0) {
                violations += !(chain[n].e_p < chain[n - 1].e_p);
                violations += !(std::abs(chain[n].f_n) < std::abs(chain[n - 1].f_n));
            }
            ++checked;
        }
    }
    for (const auto& traj : runs) {
        const auto& rev = traj.reversals;
        for (std::size_t i = 0; i < rev.size(); ++i) {
            violations += !(rev[i].e_p > 0.0);
            if (i > 0) {
                violations += !(rev[i].e_p < rev[i - 1].e_p);
                violations += !(std::abs(rev[i].f_i) < std::abs(rev[i - 1].f_i));
            }
            ++checked;
        }
    }
    std::ostringstream detail;
    detail << checked << " reversals checked";
    return make("monotone_decay", "violations of E_p(i+1) < E_p(i), |F_i+1| < |F_i|, E_p > 0",
                violations == 0 && checked > 0, violations, 0.0, detail.str());
}

CheckResult check_reversal_frequency(const std::vector<Trajectory>& runs) {
    std::vector<double> means;
    std::ostringstream detail;
    for (const auto& traj : runs) {
        const auto& rev = traj.reversals;
        if (rev.size() < 2) {
            return make("reversal_frequency", "mean inter-reversal time decreases with sigma/F_c", false,
                        0.0, 1.0, ratio_label(traj) + " recorded fewer than 2 reversals");
        }
        means.push_back((rev.back().t_i - rev.front().t_i) / static_cast<double>(rev.size() - 1));
        detail << (means.size() > 1 ? ", " : "") << ratio_label(traj) << ": " << means.back();
    }
    double worst = 0.0;
    for (std::size_t k = 1; k < means.size(); ++k) {
        worst = std::max(worst, means[k] / means[k - 1]);
    }
    return make("reversal_frequency", "max ratio of consecutive mean inter-reversal times",
                worst < 1.0 && means.size() >= 2, worst, 1.0, detail.str());
}

CheckResult check_approximation_audit(const ApproxSummary& summary) {
    std::ostringstream detail;
    detail << "max |dev| printed = " << summary.max_dev_printed << " (" << summary.printed_degenerate
           << " degenerate), rederived = " << summary.max_dev_rederived << "; better form: "
           << summary.better_form;
    const bool finite = std::isfinite(summary.max_dev_rederived) && !summary.rows.empty();
    return make("approximation_audit",
                "max relative deviation of the better next-reversal predictor from the exact root",
                finite && summary.better_form == "rederived" &&
                    summary.max_dev_rederived <= kApproxRederivedMaxDeviation,
                summary.max_dev_rederived, kApproxRederivedMaxDeviation, detail.str());
}

CheckResult check_omega_envelope(const ApproxSummary& summary) {
    double envelope = 0.0;
    double endpoint = 0.0;
    for (const auto& row : summary.rows) {
        envelope = std::max(envelope, row.omega_max_gap);
        endpoint = std::max(endpoint, row.omega_end_gap);
    }
    std::ostringstream detail;
    detail << "gap at the next reversal = " << endpoint << " (bound " << kOmegaEndpointMaxGap << ")";
    return make("omega_envelope", "max |Omega - Omega*| on [0, x_i+1] over the figure grid",
                envelope <= kOmegaEnvelopeMaxGap && endpoint <= kOmegaEndpointMaxGap, envelope,
                kOmegaEnvelopeMaxGap, detail.str());
}

CheckResult check_potential_energy_bound(const std::vector<sweep::ChainJob>& jobs,
                                         const std::vector<sweep::Chain>& chains) {
    if (jobs.size() != chains.size()) {
        throw std::invalid_argument("check_potential_energy_bound: jobs and chains differ in length");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const double bound = analysis::potential_energy_bound(jobs[j].params);
        for (const auto& entry : chains[j]) {
            worst = std::max(worst, entry.e_p / bound);
        }
    }
    // E_p(-F_c) attains the bound; allow its last-digit rounding.
    constexpr double kLimit = 1.0 + 1e-12;
    return make("potential_energy_bound", "max E_p(n) / ((1 - ln 2) F_c^2/sigma) along chains",
                worst <= kLimit, worst, kLimit);
}

bool ValidationReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& ValidationReport::find(const std::string& id) const {
    for (const auto& c : checks) {
        if (c.id == id) {
            return c;
        }
    }
    throw std::out_of_range("ValidationReport: no check named " + id);
}

ValidationReport run_validation(const ValidationOptions& options) {
    const auto configs = validation_runs();
    const auto runs = options.parallel ? sweep::simulate_batch_omp(configs)
                                       : sweep::simulate_batch_serial(configs);

    std::vector<sweep::ChainJob> jobs;
    for (double ratio : {10.0, 100.0, 1000.0}) {
        for (double f_0 : {-1.0, -0.5, -0.1}) {
            sweep::ChainJob job;
            job.f_0 = f_0;
            job.params = dahl(1.0, ratio);
            jobs.push_back(job);
        }
    }
    const auto chains = options.parallel ? sweep::chain_batch_omp(jobs) : sweep::chain_batch_serial(jobs);

    const auto points = approximation_grid(options.omega_exponent);
    auto audit = options.parallel ? sweep::predictor_audit_omp(points) : sweep::predictor_audit_serial(points);

    ValidationReport report;
    report.approximation = summarize_approximation(std::move(audit));
    const std::vector<Trajectory> balance_runs(runs.begin(), runs.begin() + 2);

    report.checks.push_back(check_max_potential_energy());
    report.checks.push_back(check_quadrature_equivalence());
    report.checks.push_back(check_form_consistency());
    report.checks.push_back(check_stop_spring_conservative());
    report.checks.push_back(check_clockwise_dissipation());
    report.checks.push_back(check_energy_balance(balance_runs));
    report.checks.push_back(check_equal_areas(balance_runs));
    report.checks.push_back(check_chain_vs_simulation(runs.front()));
    report.checks.push_back(check_series_convergence());
    report.checks.push_back(check_monotone_decay(chains, runs));
    report.checks.push_back(check_reversal_frequency(runs));
    report.checks.push_back(check_approximation_audit(report.approximation));
    report.checks.push_back(check_omega_envelope(report.approximation));
    report.checks.push_back(check_potential_energy_bound(jobs, chains));
    return report;
}

}  // namespace presliding::validation
