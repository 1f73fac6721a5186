#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "presliding/errors.hpp"
#include "presliding/hysteresis.hpp"
#include "presliding/oracle.hpp"

using namespace presliding;

namespace {

FrictionParams dahl(double f_c, double sigma, double gamma = 1.0) {
    FrictionParams p;
    p.f_c = f_c;
    p.sigma = sigma;
    p.gamma = gamma;
    return p;
}

// Fine-step RK4 in x of dF/dx = sigma (1 - F / F_c); independent of the
// closed branch form.
double integrate_branch_ode(double f_start, double length, double f_c, double sigma, int steps) {
    const auto rate = [&](double f) { return sigma * (1.0 - f / f_c); };
    const double h = length / steps;
    double f = f_start;
    for (int i = 0; i < steps; ++i) {
        const double k1 = rate(f);
        const double k2 = rate(f + 0.5 * h * k1);
        const double k3 = rate(f + 0.5 * h * k2);
        const double k4 = rate(f + h * k3);
        f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return f;
}

}  // namespace

TEST(FrictionParams, Validation) {
    EXPECT_NO_THROW(dahl(1.0, 1.0).validate());
    EXPECT_THROW(dahl(0.0, 1.0).validate(), PreconditionError);
    EXPECT_THROW(dahl(1.0, -1.0).validate(), PreconditionError);
    EXPECT_THROW(dahl(1.0, 1.0, -0.5).validate(), PreconditionError);
    FrictionParams p;
    p.mass = 0.0;
    EXPECT_THROW(p.validate(), PreconditionError);
}

TEST(DahlRate, Examples) {
    EXPECT_DOUBLE_EQ(dahl_rate(0.0, 1.0, dahl(1.0, 1.0)), 1.0);
    EXPECT_DOUBLE_EQ(dahl_rate(1.0, 1.0, dahl(1.0, 7.0)), 0.0);
    EXPECT_DOUBLE_EQ(dahl_rate(-0.5, 1.0, dahl(1.0, 2.0)), 3.0);
}

TEST(DahlRate, MatchesFiniteDifferenceOfBranch) {
    // Branch through (0, -1) with sigma = 2 has F = -0.5 at x = ln(4/3) / 2.
    const auto p = dahl(1.0, 2.0);
    const BranchState b{0.0, -1.0, Direction::Positive};
    const double x = 0.5 * std::log(4.0 / 3.0);
    ASSERT_NEAR(dahl_branch_force(x, b, p), -0.5, 1e-15);
    const double fd = oracle::derivative([&](double xx) { return dahl_branch_force(xx, b, p); }, x,
                                         oracle::default_step(x));
    EXPECT_NEAR(fd, 3.0, 3.0 * 1e-6);
}

TEST(DahlRate, ZeroVelocityIsZero) {
    EXPECT_EQ(dahl_rate(0.3, 0.0, dahl(1.0, 5.0)), 0.0);
}

TEST(DahlRate, NegativeDirectionMirrors) {
    const auto p = dahl(2.0, 3.0);
    EXPECT_DOUBLE_EQ(dahl_rate(0.5, -1.0, p), dahl_rate(-0.5, 1.0, p));
}

TEST(DahlRate, RejectsForceOutsideBand) {
    EXPECT_THROW((void)dahl_rate(1.0 + 1e-9, 1.0, dahl(1.0, 1.0)), DomainError);
}

TEST(DahlRate, GeneralShapeExponent) {
    EXPECT_NEAR(dahl_rate(0.25, 1.0, dahl(1.0, 4.0, 2.0)), 4.0 * 0.75 * 0.75, 1e-15);
    EXPECT_NEAR(dahl_rate(0.25, 1.0, dahl(1.0, 4.0, 0.5)), 4.0 * std::sqrt(0.75), 1e-15);
    // gamma = 0: stop-type slope inside the band, zero at saturation
    EXPECT_DOUBLE_EQ(dahl_rate(0.9, 1.0, dahl(1.0, 4.0, 0.0)), 4.0);
    EXPECT_DOUBLE_EQ(dahl_rate(1.0, 1.0, dahl(1.0, 4.0, 0.0)), 0.0);
}

TEST(DahlBranchForce, PassesThroughReversal) {
    const BranchState b{0.3, -0.2, Direction::Positive};
    EXPECT_DOUBLE_EQ(dahl_branch_force(0.3, b, dahl(1.0, 3.0)), -0.2);
}

TEST(DahlBranchForce, SaturatesFarFromReversal) {
    const BranchState up{0.0, -0.4, Direction::Positive};
    const BranchState down{0.0, 0.4, Direction::Negative};
    EXPECT_DOUBLE_EQ(dahl_branch_force(100.0, up, dahl(1.0, 1.0)), 1.0);
    EXPECT_DOUBLE_EQ(dahl_branch_force(-100.0, down, dahl(1.0, 1.0)), -1.0);
}

TEST(DahlBranchForce, AgreesWithFineStepOde) {
    const BranchState b{0.0, -0.5, Direction::Positive};
    const double closed = dahl_branch_force(std::numbers::ln2, b, dahl(1.0, 1.0));
    EXPECT_NEAR(closed, 0.25, 1e-15);
    EXPECT_NEAR(integrate_branch_ode(-0.5, std::numbers::ln2, 1.0, 1.0, 10000), closed, 1e-12);
}

TEST(DahlBranchForce, RejectsQueriesBehindReversal) {
    const BranchState b{1.0, 0.0, Direction::Positive};
    EXPECT_THROW((void)dahl_branch_force(0.999, b, dahl(1.0, 1.0)), PreconditionError);
    const BranchState d{1.0, 0.0, Direction::Negative};
    EXPECT_THROW((void)dahl_branch_force(1.001, d, dahl(1.0, 1.0)), PreconditionError);
}

TEST(DahlBranchForce, RequiresUnitShape) {
    const BranchState b{0.0, 0.0, Direction::Positive};
    EXPECT_THROW((void)dahl_branch_force(0.1, b, dahl(1.0, 1.0, 2.0)), PreconditionError);
}

TEST(DahlBranchForce, BoundedAndMonotone) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = dahl(0.5 + 2.0 * unit(rng), std::pow(10.0, 3.0 * unit(rng)));
        const Direction dir = unit(rng) < 0.5 ? Direction::Positive : Direction::Negative;
        const BranchState b{unit(rng) - 0.5, p.f_c * (2.0 * unit(rng) - 1.0), dir};
        double prev = b.f_rev;
        for (int k = 1; k <= 50; ++k) {
            const double x = b.x_rev + sign_of(dir) * k * 0.1 * p.f_c / p.sigma;
            const double f = dahl_branch_force(x, b, p);
            ASSERT_LE(std::abs(f), p.f_c);
            ASSERT_GE(sign_of(dir) * (f - prev), 0.0);
            prev = f;
        }
    }
}

TEST(DahlBranchForce, TranslationInvariant) {
    const auto p = dahl(1.3, 17.0);
    const BranchState b{0.02, 0.4, Direction::Negative};
    for (double c : {-5.0, -0.125, 0.5, 3.0}) {
        for (double dx : {0.0, 0.01, 0.05, 0.2}) {
            const double x = b.x_rev - dx;
            EXPECT_NEAR(dahl_branch_force(x + c, b.shifted(c), p), dahl_branch_force(x, b, p), 1e-13);
        }
    }
}

TEST(DahlBranchForce, FormsConsistentOnGrid) {
    for (double ratio : {1.0, 10.0, 100.0}) {
        const auto p = dahl(1.0, ratio);
        const BranchState b{0.0, -p.f_c, Direction::Positive};
        for (int k = 0; k < 10; ++k) {
            const double f = p.f_c * (-0.9 + 0.2 * k);
            const double x = p.f_c / p.sigma * std::log(2.0 * p.f_c / (p.f_c - f));
            const double fd = oracle::derivative(
                [&](double xx) { return dahl_branch_force(xx, b, p); }, x, oracle::default_step(x));
            const double rate = dahl_rate(f, 1.0, p);
            EXPECT_LT(std::abs(fd - rate) / rate, 1e-6) << "ratio " << ratio << " F " << f;
        }
    }
}

TEST(DahlBranchForce, CoulombLimit) {
    const auto p = dahl(1.0, 1e6);
    const BranchState b{0.0, -1.0, Direction::Positive};
    EXPECT_GE(dahl_branch_force(10.0 * p.f_c / p.sigma, b, p), 0.99 * p.f_c);
}

TEST(ReverseBranch, ImmediateReversalFlipsOnly) {
    const BranchState b{0.5, -0.3, Direction::Positive};
    const auto r = reverse_branch(b, 0.5, dahl(1.0, 1.0));
    EXPECT_DOUBLE_EQ(r.x_rev, 0.5);
    EXPECT_DOUBLE_EQ(r.f_rev, -0.3);
    EXPECT_EQ(r.direction, Direction::Negative);
    EXPECT_EQ(b.direction, Direction::Positive);
}

TEST(ReverseBranch, AtZeroCrossing) {
    const BranchState b{0.0, -1.0, Direction::Positive};
    const auto r = reverse_branch(b, std::numbers::ln2, dahl(1.0, 1.0));
    EXPECT_NEAR(r.f_rev, 0.0, 1e-15);
    EXPECT_EQ(r.direction, Direction::Negative);
}

TEST(ReverseBranch, AfterHalfSaturation) {
    const BranchState b{0.0, -0.5, Direction::Positive};
    const auto r = reverse_branch(b, std::numbers::ln2, dahl(1.0, 1.0));
    EXPECT_DOUBLE_EQ(r.x_rev, std::numbers::ln2);
    EXPECT_NEAR(r.f_rev, 0.25, 1e-15);
    EXPECT_EQ(r.direction, Direction::Negative);
}

TEST(StopSpring, Examples) {
    const LinearSpringParams sp{2.0, 1.0};
    const BranchState b{0.0, 0.0, Direction::Positive};
    EXPECT_DOUBLE_EQ(stop_spring_force(0.0, b, sp), 0.0);
    EXPECT_DOUBLE_EQ(stop_spring_force(10.0, b, sp), 1.0);
    const BranchState c{0.0, -1.0, Direction::Positive};
    EXPECT_DOUBLE_EQ(stop_spring_force(0.5, c, LinearSpringParams{1.0, 1.0}), -0.5);
}

TEST(StopSpring, UnsaturatedSegmentIsAffine) {
    const LinearSpringParams sp{3.0, 10.0};
    const BranchState b{1.0, -2.0, Direction::Negative};
    for (double x : {-1.0, -0.3, 0.2, 0.9}) {
        EXPECT_NEAR(stop_spring_force(x, b, sp), -2.0 + 3.0 * (x - 1.0), 1e-14);
    }
}

TEST(StopSpring, RateStopsAtSaturation) {
    const LinearSpringParams sp{2.0, 1.0};
    EXPECT_EQ(stop_spring_rate(0.3, 1.0, sp), 2.0);
    EXPECT_EQ(stop_spring_rate(1.0, 1.0, sp), 0.0);
    EXPECT_EQ(stop_spring_rate(1.0, -1.0, sp), 2.0);
    EXPECT_EQ(stop_spring_rate(-1.0, -1.0, sp), 0.0);
    EXPECT_EQ(stop_spring_rate(0.0, 0.0, sp), 0.0);
}

TEST(LoopDissipation, StopSpringIsConservative) {
    const LinearSpringParams sp{1.0, 10.0};
    const BranchState up{-1.0, -1.0, Direction::Positive};
    const BranchState down{1.0, stop_spring_force(1.0, up, sp), Direction::Negative};
    const double delta = loop_dissipation(up, down, -1.0, 1.0, sp, 1e-10);
    EXPECT_LT(std::abs(delta), 1e-10 * sp.k * 1.0);
}

TEST(LoopDissipation, DegenerateCycle) {
    const BranchState up{0.2, 0.0, Direction::Positive};
    const BranchState down{0.2, 0.0, Direction::Negative};
    EXPECT_EQ(loop_dissipation(up, down, 0.2, 0.2, dahl(1.0, 1.0), 1e-10), 0.0);
}

TEST(LoopDissipation, DahlCycleMatchesClosedArea) {
    // Up from (0, -1) to F = 0.5 at x = ln 4, then back down to 0:
    // up = 1 - 2 e^-x, down = -1 + 0.375 e^x, area = 2 ln 4 - 2.625.
    const auto p = dahl(1.0, 1.0);
    const double x_hi = std::log(4.0);
    const BranchState up{0.0, -1.0, Direction::Positive};
    const auto down = reverse_branch(up, x_hi, p);
    ASSERT_NEAR(down.f_rev, 0.5, 1e-15);
    const double delta = loop_dissipation(up, down, 0.0, x_hi, p, 1e-12);
    EXPECT_GT(delta, 0.0);
    EXPECT_NEAR(delta, 2.0 * std::log(4.0) - 2.625, 1e-11);
}

TEST(LoopDissipation, ClockwiseOrientation) {
    // Closed symmetric cycles: ascending over a stroke L from -F* to +F*
    // with F* = F_c tanh(sigma L / 2 F_c), then descending back.
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = dahl(0.5 + unit(rng), std::pow(10.0, 2.0 * unit(rng)));
        const double x_lo = unit(rng) - 0.5;
        const double stroke = 3.0 * p.f_c / p.sigma * (0.05 + unit(rng));
        const double x_hi = x_lo + stroke;
        const double f_star = p.f_c * std::tanh(0.5 * p.sigma * stroke / p.f_c);
        const BranchState up{x_lo, -f_star, Direction::Positive};
        const auto down = reverse_branch(up, x_hi, p);
        ASSERT_NEAR(down.f_rev, f_star, 1e-12 * p.f_c);
        ASSERT_NEAR(dahl_branch_force(x_lo, down, p), -f_star, 1e-12 * p.f_c);
        for (int k = 0; k <= 20; ++k) {
            const double x = std::min(x_lo + stroke * k / 20.0, x_hi);
            ASSERT_GE(dahl_branch_force(x, up, p), dahl_branch_force(x, down, p) - 1e-12 * p.f_c);
        }
        EXPECT_GT(loop_dissipation(up, down, x_lo, x_hi, p, 1e-10), 0.0);
    }
}

TEST(LoopDissipation, RejectsMalformedCycles) {
    const auto p = dahl(1.0, 1.0);
    const BranchState up{0.0, 0.0, Direction::Positive};
    const BranchState down{1.0, 0.0, Direction::Negative};
    EXPECT_THROW((void)loop_dissipation(up, down, 1.0, 0.0, p, 1e-8), PreconditionError);
    EXPECT_THROW((void)loop_dissipation(down, up, 0.0, 1.0, p, 1e-8), PreconditionError);
    EXPECT_THROW((void)loop_dissipation(up, down, -0.5, 1.0, p, 1e-8), PreconditionError);
}
