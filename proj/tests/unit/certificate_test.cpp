#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pdestab/certificate.hpp"

using namespace pdestab;

namespace {

const double kR = oracle::example_r();
const double kEps = (1 - oracle::example_s()) / 6;

oracle::KernelScalars linear_scalars() {
    return oracle::scalars([](double x) { return x; }, [](double) { return 1.0; }, 0.0);
}

}  // namespace

TEST(ConditionSides, WorkedExampleHolds) {
    const auto k = Kernel::linear();
    const auto s = stabilization_condition_sides(k, kR, 1.0, ReactionTerm::cubic(11, 1), kEps);
    EXPECT_LT(s.lhs, s.rhs);
    EXPECT_EQ(s.lhs, 0.0);
    EXPECT_NEAR(s.margin(), oracle::condition_margin(linear_scalars(), kR, 1, 11, 0, kEps), 1e-11);
}

TEST(ConditionSides, MatchesIndependentTranscriptionOnOtherKernels) {
    const auto k = Kernel::make(KernelFamily::sinh, 1.0);
    const auto s = oracle::scalars([](double x) { return std::sinh(x) / std::sinh(1.0); },
                                   [](double x) { return std::cosh(x) / std::sinh(1.0); }, 1.0);
    const auto f = ReactionTerm::cubic(4, 1).with_bounds(0.3, 1.0);
    for (double r : {-1.5, 0.0, 0.7, 2.0}) {
        for (double e : {0.0, 0.05, 1.0, 7.0}) {
            EXPECT_NEAR(stabilization_condition_sides(k, r, 1.3, f, e).margin(),
                        oracle::condition_margin(s, r, 1.3, 4, 0.3, e), 1e-10)
                << r << " " << e;
        }
    }
}

TEST(ConditionSides, OpenLoopReducesToDiffusionBound) {
    const auto k = Kernel::linear();
    const double p = 1.7;
    for (double q : {-3.0, 0.0, 5.0, 20.0}) {
        const auto s = stabilization_condition_sides(k, 0.0, p, ReactionTerm::cubic(q, 1), 0.0);
        EXPECT_EQ(s.lhs, 0.0);
        EXPECT_NEAR(s.margin() * k.norm2_sq(), kPi * kPi - q / p, 1e-12);
    }
    const auto edge = stabilization_condition_sides(k, 0.0, 1.0, ReactionTerm::cubic(kPi * kPi, 1), 0.0);
    EXPECT_NEAR(edge.margin(), 0.0, 1e-12);
    EXPECT_FALSE(build_certificate(k, 0.0, 1.0, ReactionTerm::cubic(kPi * kPi, 1), 0.0).condition_ok);
}

TEST(ConditionSides, RejectsBadInputs) {
    const auto k = Kernel::linear();
    EXPECT_THROW(stabilization_condition_sides(k, 1, 0.0, ReactionTerm::cubic(1, 1), 0.0), Error);
    EXPECT_THROW(stabilization_condition_sides(k, 1, 1.0, ReactionTerm::cubic(1, 1), -0.1), Error);
}

TEST(FindEpsilon, WorkedExampleHasPositiveMargin) {
    const auto res = find_epsilon(Kernel::linear(), kR, 1.0, ReactionTerm::cubic(11, 1));
    ASSERT_TRUE(res.epsilon.has_value());
    EXPECT_GT(res.best_margin, 0.0);
    // Dense oracle scan.
    double best = -1e300;
    for (int i = 0; i <= 200000; ++i) best = std::max(best, oracle::condition_margin(linear_scalars(), kR, 1, 11, 0, i * 5e-6));
    EXPECT_GE(res.best_margin, best - 1e-8);
    EXPECT_NEAR(res.best_margin, oracle::condition_margin(linear_scalars(), kR, 1, 11, 0, *res.epsilon), 1e-9);
    EXPECT_NEAR(*res.epsilon, 0.11538, 1e-4);
}

TEST(FindEpsilon, UnstableOpenLoopHasNone) {
    const auto k = Kernel::linear();
    const auto f = ReactionTerm::cubic(2 * kPi * kPi, 1);
    EXPECT_FALSE(find_epsilon(k, 0.0, 1.0, f).epsilon.has_value());
    for (int i = 0; i <= 10000; ++i) {
        EXPECT_LE(oracle::condition_margin(linear_scalars(), 0, 1, 2 * kPi * kPi, 0, i * 0.01), 0.0);
    }
}

TEST(FindEpsilon, StableOpenLoopCertifiedAtZero) {
    const auto res = find_epsilon(Kernel::linear(), 0.0, 1.0, ReactionTerm::polynomial_odd(0, 1, 4));
    ASSERT_TRUE(res.epsilon.has_value());
    EXPECT_NEAR(*res.epsilon, 0.0, 1e-10);
    EXPECT_NEAR(res.best_margin, kPi * kPi * 3, 1e-9);
}

TEST(Certificate, WorkedExampleConstants) {
    const auto c = build_certificate(Kernel::linear(), kR, 1.0, ReactionTerm::cubic(11, 1), kEps);
    EXPECT_TRUE(c.valid());
    EXPECT_DOUBLE_EQ(c.c1, 0.5);
    EXPECT_NEAR(c.c2, (1 + kR / 3) / 2, 1e-15);
    EXPECT_NEAR(c.c2, 0.9705, 1e-4);
    EXPECT_NEAR(c.G, 1.3932, 1e-4);
    EXPECT_NEAR(c.k_bar, std::sqrt(11.0), 1e-14);
    EXPECT_GT(c.phi, 0.0);
    EXPECT_NEAR(c.sigma, c.phi / (2 * c.c2), 1e-15);
    EXPECT_TRUE(c.damping_ok);
    EXPECT_NEAR(c.damping_required, 1.0, 1e-13);
}

TEST(Certificate, ZeroGain) {
    const auto c = build_certificate(Kernel::linear(), 0.0, 1.0, ReactionTerm::cubic(1, 1));
    EXPECT_DOUBLE_EQ(c.c1, 0.5);
    EXPECT_DOUBLE_EQ(c.c2, 0.5);
    EXPECT_DOUBLE_EQ(c.G, 1.0);
}

TEST(Certificate, NegativeGain) {
    const auto c = build_certificate(Kernel::linear(), -2.0, 1.0, ReactionTerm::cubic(1, 1));
    EXPECT_NEAR(c.c1, 1.0 / 6.0, 1e-15);
    EXPECT_DOUBLE_EQ(c.c2, 0.5);
    EXPECT_NEAR(c.G, std::sqrt(3.0), 1e-14);
}

TEST(Certificate, SignHypothesisViolation) {
    try {
        build_certificate(Kernel::linear(), -3.0, 1.0, ReactionTerm::cubic(1, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::hypothesis_violation);
        EXPECT_NE(std::string(e.what()).find("r_sign"), std::string::npos);
    }
}

TEST(Certificate, TruncationInapplicable) {
    const auto c = build_certificate(Kernel::linear(), 0.0, 1.0, ReactionTerm::polynomial_odd(1, 1, 2));
    EXPECT_FALSE(c.truncation_ok);
    EXPECT_FALSE(c.valid());
}

TEST(Certificate, DampingFailsAboveTightGain) {
    const auto c = build_certificate(Kernel::linear(), kR * 1.01, 1.0, ReactionTerm::cubic(11, 1));
    EXPECT_FALSE(c.damping_ok);
    EXPECT_FALSE(c.valid());
}

TEST(Certificate, VerdictIndependentOfDampingScale) {
    for (double q : {5.0, 11.0, 13.5, 20.0}) {
        for (double r : {0.0, 1.0, kR}) {
            const bool ref = build_certificate(Kernel::linear(), r, 1.0, ReactionTerm::polynomial_odd(q, 1, 4)).valid();
            for (double B : {0.01, 100.0}) {
                EXPECT_EQ(build_certificate(Kernel::linear(), r, 1.0, ReactionTerm::polynomial_odd(q, B, 4)).valid(), ref);
            }
        }
    }
}

TEST(Certificate, ValidImpliesPositiveRates) {
    for (auto fam : {KernelFamily::linear, KernelFamily::sinh, KernelFamily::sin}) {
        const auto k = Kernel::make(fam, 1.2);
        for (double r : {0.0, 0.5, 1.5, 2.5}) {
            for (double q : {-2.0, 3.0, 9.0}) {
                const auto c = build_certificate(k, r, 1.0, ReactionTerm::cubic(q, 10));
                if (c.valid()) {
                    EXPECT_GT(c.phi, 0.0);
                    EXPECT_GT(c.sigma, 0.0);
                    EXPECT_GE(c.G, 1.0);
                }
            }
        }
    }
}

TEST(Certificate, MarginContinuousInEpsilon) {
    const auto k = Kernel::make(KernelFamily::sin, 2.0);
    const auto f = ReactionTerm::cubic(6, 1);
    double prev = stabilization_condition_sides(k, 1.0, 1.0, f, 0.0).margin();
    for (int i = 1; i <= 1000; ++i) {
        const double m = stabilization_condition_sides(k, 1.0, 1.0, f, i * 0.01).margin();
        EXPECT_LE(std::abs(m - prev), 1e3 * 0.01);
        prev = m;
    }
}

TEST(Certificate, WirtingerRatioBelowFour) {
    for (auto fam : {KernelFamily::linear, KernelFamily::sinh, KernelFamily::sin}) {
        for (int i = 1; i <= 20; ++i) {
            const double par = 0.37 * i;
            if (fam == KernelFamily::sin && std::abs(par - kPi * std::round(par / kPi)) < 1e-3) continue;
            const auto k = Kernel::make(fam, par);
            for (double e : {0.0, 0.01, 0.1, 1.0, 10.0}) EXPECT_LT(wirtinger_coefficient_ratio(k, e), 4.0);
        }
    }
}

TEST(PsiBound, ZeroGainReducesToReactionOnly) {
    const auto k = Kernel::linear();
    const auto f = ReactionTerm::cubic(-1, 2);
    const auto c = build_certificate(k, 0.0, 1.0, f);
    ASSERT_TRUE(c.valid());
    const auto psi = psi_bound(c, k, f);
    EXPECT_DOUBLE_EQ(psi.K_op_norm_bound(), 1.0);
    EXPECT_DOUBLE_EQ(psi.G_op_norm_bound(), 0.0);
    for (double s : {0.0, 1.0, 3.0}) {
        const double g = 1 + 2 * s * s;
        EXPECT_NEAR(psi(s), c.G * std::sqrt(g * g / (4 * c.sigma)), 1e-12);
    }
}

TEST(PsiBound, MonotoneAndNonNegative) {
    const auto k = Kernel::linear();
    const auto f = ReactionTerm::cubic(11, 1);
    const auto c = build_certificate(k, kR, 1.0, f);
    const auto psi = psi_bound(c, k, f);
    EXPECT_NEAR(psi.K_op_norm_bound(), 1 + kR / std::sqrt(12.0), 1e-14);
    EXPECT_NEAR(psi.G_op_norm_bound(), 2 * kR, 1e-14);
    EXPECT_LE(psi(1.0), psi(2.0));
    EXPECT_LE(psi(2.0), psi(10.0));
}

TEST(PsiBound, RequiresValidCertificate) {
    const auto k = Kernel::linear();
    const auto f = ReactionTerm::cubic(30, 1);
    const auto c = build_certificate(k, 0.0, 1.0, f);
    ASSERT_FALSE(c.valid());
    EXPECT_THROW(psi_bound(c, k, f), Error);
}

TEST(SupNormCap, Cases) {
    const auto k = Kernel::linear();
    const auto c0 = build_certificate(k, 0.0, 1.0, ReactionTerm::cubic(-1, 1));
    EXPECT_DOUBLE_EQ(sup_norm_cap(c0, k, 1.0, 0.5), 1.0);
    const auto c = build_certificate(k, kR, 1.0, ReactionTerm::cubic(11, 1));
    EXPECT_NEAR(sup_norm_cap(c, k, 0.1, 0.05), std::sqrt(11.0), 1e-14);
    EXPECT_NEAR(sup_norm_cap(c, k, 0.0, 0.0), c.k_bar, 0.0);
}

TEST(CertificateReport, KeyValueLines) {
    const auto c = build_certificate(Kernel::linear(), kR, 1.0, ReactionTerm::cubic(11, 1));
    const auto rep = certificate_report(c);
    EXPECT_EQ(rep.find("valid"), "true");
    EXPECT_EQ(rep.find("epsilon_scan_max"), "10");
    EXPECT_EQ(rep.find("failed"), "none");
    const auto parsed = parse_key_values(rep.str());
    EXPECT_EQ(parsed.size(), rep.entries().size());
}
