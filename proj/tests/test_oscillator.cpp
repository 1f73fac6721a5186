#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "presliding/csv.hpp"
#include "presliding/errors.hpp"
#include "presliding/oracle_reference.hpp"
#include "presliding/oscillator.hpp"
#include "presliding/reversal_analysis.hpp"

using namespace presliding;

namespace {

SimConfig dahl_config(double sigma_over_fc, double v0 = 0.5, int max_reversals = 20) {
    SimConfig cfg;
    cfg.params.f_c = 1.0;
    cfg.params.sigma = sigma_over_fc;
    cfg.v0 = v0;
    cfg.max_reversals = max_reversals;
    return cfg;
}

double total_energy(const OscState& s, const FrictionParams& p) {
    return kinetic_energy(s, p) + s.e_f_cum;
}

// Index of the force zero crossing sample between two reversal times.
const OscState& crossing_between(const Trajectory& traj, double t_lo, double t_hi) {
    const OscState* best = nullptr;
    for (const auto& s : traj.samples) {
        if (s.t > t_lo && s.t < t_hi && (!best || std::abs(s.f) < std::abs(best->f))) {
            best = &s;
        }
    }
    if (!best) {
        throw std::logic_error("no sample between reversals");
    }
    return *best;
}

}  // namespace

TEST(SimConfig, Validation) {
    SimConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.v0 = 0.0;
    EXPECT_THROW(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.f0 = 1.5;
    EXPECT_THROW(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.f0 = 0.5;  // acts along v0
    EXPECT_THROW(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.dt = -1e-3;
    EXPECT_THROW(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.t_max = 0.0;
    EXPECT_THROW(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.max_reversals = 0;
    EXPECT_THROW(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.model = ForceModel::StopSpring;
    cfg.spring.k = 0.0;
    EXPECT_THROW(cfg.validate(), PreconditionError);
}

TEST(SimConfig, Defaults) {
    SimConfig cfg;
    cfg.params.sigma = 100.0;
    cfg.params.mass = 4.0;
    EXPECT_DOUBLE_EQ(cfg.effective_dt(), 0.2 / 200.0);
    EXPECT_DOUBLE_EQ(cfg.effective_stop_energy(), 1e-12 * 0.5 * 4.0 * 0.25);
    cfg.dt = 1e-4;
    cfg.stop_energy = 0.0;
    EXPECT_EQ(cfg.effective_dt(), 1e-4);
    EXPECT_EQ(cfg.effective_stop_energy(), 0.0);
}

TEST(KineticEnergy, Examples) {
    FrictionParams p;
    EXPECT_EQ(kinetic_energy({0.0, 0.0, 0.0, 0.0, 0.0}, p), 0.0);
    EXPECT_EQ(kinetic_energy({0.0, 0.0, 2.0, 0.0, 0.0}, p), 2.0);
    p.mass = 2.0;
    EXPECT_EQ(kinetic_energy({0.0, 0.0, 3.0, 0.0, 0.0}, p), 9.0);
}

TEST(Step, RestStateIsEquilibrium) {
    const OscState s{1.5, 0.3, 0.0, 0.0, 0.2};
    const auto out = step(s, 1e-2, FrictionParams{});
    EXPECT_DOUBLE_EQ(out.t, 1.51);
    EXPECT_EQ(out.x, s.x);
    EXPECT_EQ(out.v, s.v);
    EXPECT_EQ(out.f, s.f);
    EXPECT_EQ(out.e_f_cum, s.e_f_cum);
}

TEST(Step, MatchesTaylorExpansion) {
    const FrictionParams p;
    const auto out = step({0.0, 0.0, 1.0, 0.0, 0.0}, 1e-3, p);
    EXPECT_NEAR(out.x, 1e-3, 1e-6);
    EXPECT_NEAR(out.f, 1e-3, 1e-6);
    EXPECT_NEAR(out.v, 1.0 - 5e-7, 1e-9);
    const auto ref = oracle::integrate_arc({0.0, 0.0, 1.0, 0.0, 0.0}, 1e-3, 10, p);
    EXPECT_NEAR(out.x, ref.x, 1e-15);
    EXPECT_NEAR(out.v, ref.v, 1e-15);
    EXPECT_NEAR(out.f, ref.f, 1e-15);
}

TEST(Step, RejectsBandEscape) {
    FrictionParams p;
    p.sigma = 1e6;
    EXPECT_THROW((void)step({0.0, 0.0, 1.0, 0.9, 0.0}, 1e-3, p), StepRejected);
    EXPECT_THROW((void)step({0.0, 0.0, 1.0, 1.5, 0.0}, 1e-3, p), PreconditionError);
}

TEST(Step, StopSpringClampsAtSaturation) {
    const LinearSpringParams sp{100.0, 1.0};
    const auto out = step({0.0, 0.0, 1.0, 0.999, 0.0}, 1e-2, sp, 1.0);
    EXPECT_LE(out.f, 1.0);
    EXPECT_EQ(out.f, 1.0);
}

TEST(LocateReversal, ReturnsZeroVelocitySampleUnchanged) {
    FrictionParams p;
    const OscState a{0.0, 0.0, 1e-3, 0.5, 0.0};
    const OscState b{1e-3, 1e-6, 0.0, 0.5, 0.0};
    const auto r = locate_reversal(a, b, p, 1e-12);
    EXPECT_EQ(r.t, b.t);
    EXPECT_EQ(r.x, b.x);
}

TEST(LocateReversal, BisectionContract) {
    FrictionParams p;
    p.f_c = 2.0;
    const OscState before{0.0, 0.0, 1e-3, 2.0, 0.0};
    const auto after = step(before, 1e-3, p);
    ASSERT_LT(after.v, 0.0);
    const auto r = locate_reversal(before, after, p, 1e-12);
    EXPECT_GT(r.t, before.t);
    EXPECT_LT(r.t, after.t);
    EXPECT_LT(std::abs(r.v), 1e-12);
    EXPECT_NEAR(r.t, 5e-4, 1e-9);
}

TEST(LocateReversal, RequiresSignChange) {
    FrictionParams p;
    const OscState a{0.0, 0.0, 1.0, 0.0, 0.0};
    EXPECT_THROW((void)locate_reversal(a, step(a, 1e-3, p), p, 1e-12), PreconditionError);
}

TEST(Simulate, FirstReversalMatchesFineReference) {
    auto cfg = dahl_config(10.0, 1.0, 1);
    const auto traj = simulate(cfg);
    const auto ref = oracle::reference_integrate(cfg, 100.0);
    ASSERT_EQ(traj.reversals.size(), 1u);
    ASSERT_EQ(ref.reversals.size(), 1u);
    EXPECT_NEAR(traj.reversals[0].x_i, ref.reversals[0].x_i, 1e-6);
    EXPECT_EQ(traj.stop_reason, StopReason::MaxReversals);
}

TEST(Simulate, StopSpringKeepsAmplitude) {
    SimConfig cfg;
    cfg.model = ForceModel::StopSpring;
    cfg.spring = {1.0, 1e3};
    cfg.v0 = 0.5;
    cfg.max_reversals = 12;
    const auto traj = simulate(cfg);
    ASSERT_EQ(traj.reversals.size(), 12u);
    for (const auto& r : traj.reversals) {
        EXPECT_NEAR(std::abs(r.x_i), 0.5, 0.5 * 1e-6);
        EXPECT_NEAR(r.e_d_halfcycle, 0.0, 1e-9);
    }
}

TEST(Simulate, StopSpringPeakAtMidPhase) {
    SimConfig cfg;
    cfg.model = ForceModel::StopSpring;
    cfg.spring = {1.0, 1e3};
    cfg.v0 = 0.5;
    cfg.max_reversals = 4;
    const auto traj = simulate(cfg);
    for (std::size_t i = 0; i + 1 < traj.reversals.size(); ++i) {
        const auto peak = peak_velocity_between_reversals(traj, i);
        const double mid = 0.5 * (traj.reversals[i].t_i + traj.reversals[i + 1].t_i);
        EXPECT_NEAR(peak.t_0, mid, 1e-8);
        EXPECT_NEAR(std::abs(peak.v_peak), 0.5, 1e-9);
    }
}

TEST(Simulate, DahlAmplitudeDecays) {
    const auto traj = simulate(dahl_config(10.0, 0.5, 7));
    ASSERT_EQ(traj.reversals.size(), 7u);
    const auto& r = traj.reversals;
    EXPECT_GT(std::abs(r[0].x_i), std::abs(r[2].x_i));
    EXPECT_GT(std::abs(r[2].x_i), std::abs(r[4].x_i));
    EXPECT_GT(std::abs(r[4].x_i), std::abs(r[6].x_i));
}

TEST(Simulate, StopsOnTimeLimit) {
    auto cfg = dahl_config(10.0);
    cfg.t_max = 0.5;
    const auto traj = simulate(cfg);
    EXPECT_EQ(traj.stop_reason, StopReason::TimeLimit);
    EXPECT_DOUBLE_EQ(traj.samples.back().t, 0.5);
}

TEST(Simulate, StopsOnEnergyThreshold) {
    auto cfg = dahl_config(10.0, 0.5, 1000);
    cfg.stop_energy = 1e-4;
    const auto traj = simulate(cfg);
    EXPECT_EQ(traj.stop_reason, StopReason::StopEnergy);
    EXPECT_LT(traj.reversals.back().e_p, 1e-4);
    EXPECT_GE(traj.reversals[traj.reversals.size() - 2].e_p, 1e-4);
}

TEST(Simulate, NegativeInitialVelocityMirrors) {
    auto up = dahl_config(10.0, 0.5, 6);
    auto down = up;
    down.v0 = -0.5;
    const auto a = simulate(up);
    const auto b = simulate(down);
    ASSERT_EQ(a.reversals.size(), b.reversals.size());
    for (std::size_t i = 0; i < a.reversals.size(); ++i) {
        EXPECT_EQ(a.reversals[i].x_i, -b.reversals[i].x_i);
        EXPECT_EQ(a.reversals[i].f_i, -b.reversals[i].f_i);
        EXPECT_EQ(a.reversals[i].e_p, b.reversals[i].e_p);
    }
}

TEST(Simulate, NonzeroInitialForceOpposingMotion) {
    auto cfg = dahl_config(10.0, 0.5, 4);
    cfg.f0 = -0.5;
    const auto traj = simulate(cfg);
    ASSERT_EQ(traj.reversals.size(), 4u);
    for (const auto& r : traj.reversals) {
        EXPECT_GE(r.e_d_halfcycle, 0.0);
    }
}

class DahlRun : public ::testing::TestWithParam<double> {
protected:
    void SetUp() override { traj_ = simulate(dahl_config(GetParam())); }
    Trajectory traj_;
};

TEST_P(DahlRun, SamplesStrictlyIncreaseInTime) {
    for (std::size_t i = 1; i < traj_.samples.size(); ++i) {
        ASSERT_LT(traj_.samples[i - 1].t, traj_.samples[i].t);
    }
}

TEST_P(DahlRun, EnergyBalanceAlongTrajectory) {
    const auto& p = traj_.config.params;
    const double e0 = traj_.config.initial_kinetic_energy();
    double drift = 0.0;
    for (const auto& s : traj_.samples) {
        drift = std::max(drift, std::abs(total_energy(s, p) - e0) / e0);
        ASSERT_LE(std::abs(s.f), p.f_c);
    }
    EXPECT_LT(drift, 1e-6);
}

TEST_P(DahlRun, ReversalsHaveZeroVelocity) {
    const double tol = reversal_velocity_tolerance(traj_.config);
    ASSERT_EQ(traj_.reversals.size(), 20u);
    for (const auto& r : traj_.reversals) {
        EXPECT_LT(std::abs(sample_at(traj_, r.t_i).v), tol);
    }
}

TEST_P(DahlRun, EqualAreas) {
    const auto& rev = traj_.reversals;
    for (std::size_t i = 0; i + 1 < rev.size(); ++i) {
        const double t_0 = crossing_between(traj_, rev[i].t_i, rev[i + 1].t_i).t;
        const double first = restoring_energy_between(traj_, rev[i].t_i, t_0);
        const double second = restoring_energy_between(traj_, t_0, rev[i + 1].t_i);
        EXPECT_LT(std::abs(first + second), 1e-5 * rev[i].e_p) << "half-cycle " << i;
    }
}

TEST_P(DahlRun, ReleasedEnergyMatchesClosedForm) {
    const auto& p = traj_.config.params;
    const auto& rev = traj_.reversals;
    for (std::size_t i = 0; i + 1 < rev.size(); ++i) {
        const double t_0 = crossing_between(traj_, rev[i].t_i, rev[i + 1].t_i).t;
        const double released = restoring_energy_between(traj_, rev[i].t_i, t_0);
        const double analytic = analysis::potential_energy(-std::abs(rev[i].f_i), p);
        EXPECT_NEAR(-released, analytic, 1e-8 * analytic);
        EXPECT_NEAR(rev[i].e_p, analytic, 1e-8 * analytic);
    }
}

TEST_P(DahlRun, PeakVelocityAtForceZeroCrossing) {
    const auto& p = traj_.config.params;
    const auto& rev = traj_.reversals;
    for (std::size_t i = 0; i + 1 < rev.size(); ++i) {
        const auto peak = peak_velocity_between_reversals(traj_, i);
        EXPECT_LT(std::abs(sample_at(traj_, peak.t_0).f), 1e-3 * p.f_c);
        const double ke = 0.5 * p.mass * peak.v_peak * peak.v_peak;
        const double analytic = analysis::potential_energy(-std::abs(rev[i].f_i), p);
        EXPECT_NEAR(ke, analytic, 1e-3 * analytic);
    }
}

TEST_P(DahlRun, MonotoneDecayAndPositivity) {
    const auto& rev = traj_.reversals;
    for (std::size_t i = 0; i < rev.size(); ++i) {
        EXPECT_GT(rev[i].e_p, 0.0);
        EXPECT_GT(rev[i].e_d_halfcycle, 0.0);
        if (i > 0) {
            EXPECT_LT(rev[i].e_p, rev[i - 1].e_p);
            EXPECT_LT(std::abs(rev[i].f_i), std::abs(rev[i - 1].f_i));
            EXPECT_NEAR(rev[i].e_d_halfcycle, rev[i - 1].e_p - rev[i].e_p, 1e-15);
        }
    }
}

TEST_P(DahlRun, VelocityBoundedByInitialEnergy) {
    const auto& p = traj_.config.params;
    const double bound = analysis::potential_energy_bound(p) + traj_.config.initial_kinetic_energy();
    for (const auto& s : traj_.samples) {
        ASSERT_LE(kinetic_energy(s, p), bound);
    }
}

INSTANTIATE_TEST_SUITE_P(SigmaOverFc, DahlRun, ::testing::Values(10.0, 100.0, 1000.0));

TEST(Simulate, ReversalFrequencyGrowsWithStiffness) {
    double previous = std::numeric_limits<double>::infinity();
    for (double ratio : {10.0, 100.0, 1000.0}) {
        const auto traj = simulate(dahl_config(ratio));
        const auto& rev = traj.reversals;
        ASSERT_GE(rev.size(), 2u);
        const double mean = (rev.back().t_i - rev.front().t_i) / static_cast<double>(rev.size() - 1);
        EXPECT_LT(mean, previous) << "ratio " << ratio;
        previous = mean;
    }
}

TEST(Simulate, RefinementConvergesAtFourthOrder) {
    // Over one smooth arc (start to first reversal) the reversal time error
    // drops by ~16 per halving of dt.
    auto cfg = dahl_config(10.0, 0.5, 1);
    cfg.dt = 4.0 * default_dt(cfg.params);
    const auto coarse = simulate(cfg);
    const auto fine = oracle::reference_integrate(cfg, 2.0);
    const auto truth = oracle::reference_integrate(cfg, 64.0);
    const double f_truth = truth.reversals[0].f_i;
    const double e_coarse = std::abs(coarse.reversals[0].f_i - f_truth);
    const double e_fine = std::abs(fine.reversals[0].f_i - f_truth);
    ASSERT_GT(e_fine, 0.0);
    EXPECT_GT(e_coarse / e_fine, 8.0);
}

TEST(RestoringEnergyBetween, Contract) {
    const auto traj = simulate(dahl_config(10.0, 0.5, 2));
    const double t_mid = 0.5 * traj.samples.back().t;
    EXPECT_EQ(restoring_energy_between(traj, t_mid, t_mid), 0.0);
    EXPECT_THROW((void)restoring_energy_between(traj, -1.0, t_mid), std::out_of_range);
    EXPECT_THROW((void)restoring_energy_between(traj, 0.0, traj.samples.back().t + 1.0),
                 std::out_of_range);
    const auto& a = traj.samples[3];
    const auto& b = traj.samples[10];
    EXPECT_DOUBLE_EQ(restoring_energy_between(traj, a.t, b.t), b.e_f_cum - a.e_f_cum);
    EXPECT_DOUBLE_EQ(restoring_energy_between(traj, b.t, a.t), a.e_f_cum - b.e_f_cum);
}

TEST(RestoringEnergyBetween, InterpolatesBetweenSamples) {
    const auto traj = simulate(dahl_config(10.0, 0.5, 2));
    const auto& a = traj.samples[5];
    const auto& b = traj.samples[6];
    const double t = 0.5 * (a.t + b.t);
    const auto exact = oracle::integrate_arc(a, t - a.t, 8, traj.config.params);
    EXPECT_NEAR(restoring_energy_between(traj, a.t, t), exact.e_f_cum - a.e_f_cum, 1e-12);
}

TEST(PeakVelocity, MissingReversalThrows) {
    const auto traj = simulate(dahl_config(10.0, 0.5, 2));
    EXPECT_THROW((void)peak_velocity_between_reversals(traj, 1), std::out_of_range);
    EXPECT_THROW((void)sample_at(traj, -1.0), std::out_of_range);
}

TEST(Csv, NumberFormatting) {
    EXPECT_EQ(csv::format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(csv::format_number(1.0), "1");
    EXPECT_EQ(csv::format_number(-2.5e-20), "-2.4999999999999999e-20");
    EXPECT_EQ(csv::format_number(0.0), "0");
}

TEST(Csv, TrajectoryAndReversals) {
    const auto traj = simulate(dahl_config(10.0, 0.5, 3));
    std::ostringstream t;
    csv::write_trajectory(t, traj);
    std::istringstream lines(t.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "t,x,v,F,E_k,E_f_cum");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
        ++rows;
    }
    EXPECT_EQ(rows, traj.samples.size());
    EXPECT_EQ(t.str().find('\r'), std::string::npos);

    std::ostringstream r;
    csv::write_reversals(r, traj.reversals);
    const std::string text = r.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "i,t_i,x_i,F_i,E_p,E_d_halfcycle");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'),
              static_cast<std::ptrdiff_t>(traj.reversals.size() + 1));
}
