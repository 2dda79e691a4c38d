#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pdestab/monitor.hpp"

using namespace pdestab;

namespace {

GridFunction phi(std::size_t n, int m) {
    return GridFunction::sample(n, [m](double x) { return kSqrt2 * std::sin(m * kPi * x); });
}

GridFunction dphi(std::size_t n, int m) {
    return GridFunction::sample(n, [m](double x) { return kSqrt2 * m * kPi * std::cos(m * kPi * x); });
}

}  // namespace

TEST(Lyapunov, Examples) {
    const auto k = Kernel::linear(201);
    EXPECT_EQ(lyapunov(GridFunction::zeros(201), k, 2.0), 0.0);
    const auto one = GridFunction::sample(201, [](double) { return 1.0; });
    EXPECT_NEAR(lyapunov(one, k, 0.0), 0.5, 1e-14);
    const auto x = GridFunction::sample(201, [](double x) { return x; });
    // |x|^2 / 2 + (3/2) <x, x>^2 = 1/6 + 1/6
    EXPECT_NEAR(lyapunov(x, k, 3.0), 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(lyapunov(x, k.samples(), 3.0), 1.0 / 3.0, 1e-12);
}

TEST(Lyapunov, EquivalentToL2Norm) {
    const double s = oracle::example_s(), r = oracle::example_r();
    const auto k = Kernel::linear(201);
    const auto f = ReactionTerm::cubic(11, 1);
    const auto cert = build_certificate(k, r, 1.0, f, (1.0 - s) / 6.0);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> coef(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double c[5];
        for (double& v : c) v = coef(rng);
        const auto u = GridFunction::sample(201, [&](double x) {
            double sum = c[0] * x;
            for (int m = 1; m < 5; ++m) sum += c[m] * std::sin(m * kPi * x);
            return sum;
        });
        const double n2 = std::pow(lp_norm(u, 2.0), 2);
        const double v = lyapunov(u, k, r);
        EXPECT_LE(cert.c1 * n2, v * (1 + 1e-12));
        EXPECT_LE(v, cert.c2 * n2 * (1 + 1e-12));
    }
}

TEST(FitDecayRate, Exponential) {
    std::vector<double> t, y;
    for (int i = 0; i <= 100; ++i) {
        t.push_back(0.01 * i);
        y.push_back(3.0 * std::exp(-2.0 * t.back()));
    }
    EXPECT_NEAR(fit_decay_rate(t, y), 2.0, 1e-10);
    for (double& v : y) v *= 1e-4;
    EXPECT_NEAR(fit_decay_rate(t, y), 2.0, 1e-10);
    std::fill(y.begin(), y.end(), 1.5);
    EXPECT_NEAR(fit_decay_rate(t, y), 0.0, 1e-12);
}

TEST(FitDecayRate, UsesTrailingHalf) {
    std::vector<double> t, y;
    for (int i = 0; i <= 100; ++i) {
        t.push_back(0.01 * i);
        y.push_back(t.back() < 0.4 ? 1.0 : std::exp(-3.0 * (t.back() - 0.4)));
    }
    EXPECT_NEAR(fit_decay_rate(t, y), 3.0, 1e-10);
}

TEST(FitDecayRate, InsufficientData) {
    const std::vector<double> t{0, 1, 2, 3, 4}, y{1, 1, 1, 1, 1};
    try {
        fit_decay_rate(t, y);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::insufficient_data);
    }
    std::vector<double> t2(20), y2(20, 0.0);
    EXPECT_THROW(fit_decay_rate(t2, y2), Error);
}

TEST(KernelWirtinger, EqualityCases) {
    const std::size_t n = 401;
    // e = 0 with u the first mode: both sides equal pi^2 |u|^2 for any k.
    for (auto fam : {KernelFamily::linear, KernelFamily::sinh, KernelFamily::sin}) {
        const auto k = Kernel::make(fam, 1.0, n);
        const auto s = kernel_wirtinger_check(phi(n, 1), dphi(n, 1), k.samples(), 0.0);
        EXPECT_NEAR(s.margin(), 0.0, 1e-8 * s.rhs);
    }
    // k the first mode, u the second, e = 1.
    const auto k = phi(n, 1);
    const auto s = kernel_wirtinger_check(phi(n, 2), dphi(n, 2), k, 1.0);
    EXPECT_NEAR(s.lhs, s.rhs, 1e-8 * s.rhs);
}

TEST(KernelWirtinger, HoldsForHigherModes) {
    const auto k = Kernel::make(KernelFamily::sinh, 2.0, 401);
    for (int m = 1; m <= 6; ++m) {
        for (double eps : {0.0, 0.1, 1.0, 5.0}) {
            const auto s = kernel_wirtinger_check(phi(401, m), dphi(401, m), k.samples(), eps);
            EXPECT_TRUE(s.holds(s.rhs, 1e-9)) << m << " " << eps;
        }
    }
}

TEST(KernelWirtinger, RejectsZeroKernel) {
    EXPECT_THROW(kernel_wirtinger_check(phi(101, 1), GridFunction::zeros(101), 0.1), Error);
}

TEST(BoundaryWirtinger, MatchesKernelFormWhenEndpointVanishes) {
    const auto k = Kernel::make(KernelFamily::sin, 2.0, 401);
    for (int m = 1; m <= 4; ++m) {
        const auto a = boundary_wirtinger_check(phi(401, m), dphi(401, m), k, 0.3);
        const auto b = kernel_wirtinger_check(phi(401, m), dphi(401, m), k.samples(), 0.3);
        EXPECT_NEAR(a.lhs, b.lhs, 1e-9 * std::abs(b.lhs));
        EXPECT_NEAR(a.rhs, b.rhs, 1e-8 * std::abs(b.rhs));
    }
}

TEST(BoundaryWirtinger, KernelItselfIsEquality) {
    // u = k gives u - u(1) k = 0, so both sides coincide.
    for (auto fam : {KernelFamily::linear, KernelFamily::sinh, KernelFamily::sin}) {
        const auto k = Kernel::make(fam, 1.0, 401);
        const auto s = boundary_wirtinger_check(k.samples(), k.sampled_derivative(401), k, 0.2);
        EXPECT_NEAR(s.margin(), 0.0, 1e-9 * std::max(1.0, std::abs(s.rhs)));
    }
}

TEST(Agmon, LinearProfile) {
    const auto x = GridFunction::sample(401, [](double x) { return x; });
    const auto s = agmon_check(x);
    EXPECT_NEAR(s.lhs, 1.0, 1e-14);
    EXPECT_NEAR(s.rhs, kSqrt2 * std::pow(3.0, -0.25), 1e-10);
    EXPECT_TRUE(s.holds(1.0));
}

TEST(CheckEstimates, ZeroTracePasses) {
    const double s = oracle::example_s(), r = oracle::example_r();
    const auto k = Kernel::linear(51);
    const auto f = ReactionTerm::cubic(11, 1);
    const auto cert = build_certificate(k, r, 1.0, f, (1.0 - s) / 6.0);
    const auto psi = psi_bound(cert, k, f);
    SolverConfig cfg;
    cfg.n_points = 51;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    const auto ic = InitialCondition::exact(GridFunction::zeros(51), k, r);
    const auto tr = simulate_fd(cfg, k, r, 1.0, f, ic);
    const auto rep = check_estimates(tr, cert, psi, k, ic);
    EXPECT_TRUE(rep.all_ok());
}

TEST(CheckEstimates, ClosedLoopPassesOpenLoopFails) {
    const double s = oracle::example_s(), r = oracle::example_r();
    const auto k = Kernel::linear(101);
    const auto f = ReactionTerm::cubic(11, 1);
    const auto cert = build_certificate(k, r, 1.0, f, (1.0 - s) / 6.0);
    const auto psi = psi_bound(cert, k, f);
    SolverConfig cfg;
    cfg.n_points = 101;
    cfg.dt = 5e-4;
    cfg.t_end = 1.0;
    cfg.snapshot_stride = 50;

    const auto ic = InitialCondition::corrected(bump_profile(101, 0.5, 0.1, 0.1), k, r);
    const auto closed = simulate_fd(cfg, k, r, 1.0, f, ic);
    const auto good = check_estimates(closed, cert, psi, k, ic);
    EXPECT_TRUE(good.all_ok());
    EXPECT_GT(good.sigma_fitted, cert.sigma);
    EXPECT_GE(good.lyapunov_margin, 0.0);

    const auto ic_open = InitialCondition::corrected(bump_profile(101, 0.5, 0.1, 0.1), k, 0.0);
    const auto open = simulate_fd(cfg, k, 0.0, 1.0, f, ic_open);
    const auto bad = check_estimates(open, cert, psi, k, ic_open);
    EXPECT_FALSE(bad.l2_decay_ok);
    EXPECT_LT(bad.l2_decay_margin, 0.0);

    const auto rep = estimate_report(good);
    ASSERT_TRUE(rep.find("l2_decay_ok").has_value());
}

TEST(EnergyIdentity, SpectralTraceSatisfiesIt) {
    const double r = oracle::example_r();
    const auto k = Kernel::linear(101);
    const auto f = ReactionTerm::cubic(11, 1);
    SolverConfig cfg;
    cfg.n_points = 101;
    cfg.dt = 1e-3;
    cfg.t_end = 0.3;
    cfg.n_modes = 32;
    const auto ic = InitialCondition::corrected(bump_profile(101, 0.5, 0.1, 0.1), k, r);
    const auto tr = simulate_spectral(cfg, k, r, 1.0, f, ic);
    const auto rep = check_energy_identity(tr, 0.05);
    EXPECT_GT(rep.checked, 0u);
    EXPECT_GT(rep.skipped, 0u);
    EXPECT_LE(rep.relative_error(), 0.05);
}

TEST(EnergyIdentity, RequiresSpectralData) {
    SimulationTrace tr;
    tr.times = {0.0, 0.1, 0.2};
    EXPECT_THROW(check_energy_identity(tr), Error);
}
