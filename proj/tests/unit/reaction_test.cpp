#include <gtest/gtest.h>

#include "pdestab/reaction.hpp"

using namespace pdestab;

TEST(Reaction, PointValues) {
    EXPECT_DOUBLE_EQ(evaluate(ReactionTerm::cubic(1, 1), 0.3, 2.0), -6.0);
    EXPECT_DOUBLE_EQ(evaluate(ReactionTerm::polynomial_odd(0, 1, 4), 0.3, -1.0), 1.0);
    for (const auto& f : {ReactionTerm::cubic(3, 2), ReactionTerm::polynomial_odd(-1, 1, 3.5)}) {
        EXPECT_EQ(evaluate(f, 0.5, 0.0), 0.0);
    }
    EXPECT_THROW(evaluate(ReactionTerm::cubic(1, 1), 1.5, 0.0), Error);
}

TEST(Reaction, OddInU) {
    const auto f = ReactionTerm::polynomial_odd(2.5, 0.7, 3.3);
    const auto g = ReactionTerm::cubic(2.5, 0.7);
    for (double u : {0.1, 1.0, 3.7, 50.0}) {
        EXPECT_EQ(f(0.2, -u), -f(0.2, u));
        EXPECT_EQ(g(0.2, -u), -g(0.2, u));
    }
}

TEST(Reaction, CubicDeclaresExampleConstants) {
    const auto c = ReactionTerm::cubic(11, 1).constants();
    EXPECT_EQ(c.gamma, 0.0);
    EXPECT_EQ(c.delta, 1.0);
    EXPECT_EQ(c.b, 4.0);
}

TEST(SectorBounds, AnalyticKindsPass) {
    for (double umax : {1.0, 10.0, 100.0}) {
        for (const auto& f : {ReactionTerm::cubic(1, 1), ReactionTerm::polynomial_odd(3, 2, 3), ReactionTerm::polynomial_odd(-2, 0.5, 6)}) {
            const auto v = check_sector_bounds(f, umax);
            EXPECT_TRUE(v.pass()) << umax;
            ASSERT_TRUE(v.analytic.has_value());
            EXPECT_TRUE(*v.analytic);
        }
    }
}

TEST(SectorBounds, CubicMarginVanishesAtOrigin) {
    const auto v = check_sector_bounds(ReactionTerm::cubic(1, 1), 10.0, 1001);
    EXPECT_NEAR(v.growth_margin, 0.0, 1e-9);
}

TEST(SectorBounds, UnderDeclaredDeltaFailsAnalytically) {
    const auto v = check_sector_bounds(ReactionTerm::cubic(1, 2).with_bounds(0.0, 1.0), 10.0);
    EXPECT_FALSE(v.bound_ok);
    ASSERT_TRUE(v.analytic.has_value());
    EXPECT_FALSE(*v.analytic);
}

TEST(SectorBounds, CustomLinearGrowthViolatesGrowthCondition) {
    const double q = 1.0;
    const auto f = ReactionTerm::custom([q](double, double u) { return 2 * q * u; }, SectorConstants{q, 0, 0, 0, 2});
    const auto v = check_sector_bounds(f, 1.0);
    EXPECT_FALSE(v.growth_ok);
    EXPECT_FALSE(v.pass());
    EXPECT_FALSE(v.analytic.has_value());
}

TEST(SectorBounds, Preconditions) {
    EXPECT_THROW(check_sector_bounds(ReactionTerm::cubic(1, 1), 0.0), Error);
    EXPECT_THROW(check_sector_bounds(ReactionTerm::cubic(1, 1), 1.0, 50), Error);
}

TEST(Truncation, Levels) {
    EXPECT_DOUBLE_EQ(truncation_level(ReactionTerm::polynomial_odd(1, 1, 4)).k_bar, 1.0);
    EXPECT_DOUBLE_EQ(truncation_level(ReactionTerm::polynomial_odd(-3, 1, 4)).k_bar, 0.0);
    EXPECT_DOUBLE_EQ(truncation_level(ReactionTerm::cubic(4, 1)).k_bar, 2.0);
    try {
        truncation_level(ReactionTerm::polynomial_odd(1, 1, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::certificate_inapplicable);
    }
    EXPECT_THROW(truncation_level(ReactionTerm::polynomial_odd(1, 0, 4)), Error);
}

TEST(Reaction, RejectsInvalidConstants) {
    EXPECT_THROW(ReactionTerm::polynomial_odd(1, 1, 1.5), Error);
    EXPECT_THROW(ReactionTerm::cubic(1, -1), Error);
    EXPECT_THROW(ReactionTerm::cubic(1, 1).with_bounds(-1, 1), Error);
}

TEST(Reaction, LipschitzModulus) {
    const auto f = ReactionTerm::cubic(2, 1);
    EXPECT_DOUBLE_EQ(f.lipschitz_modulus(3.0), 2 + 3 * 9);
    const auto g = ReactionTerm::custom([](double, double u) { return -u * u * u; }, SectorConstants{0, 0, 1, 1, 4});
    EXPECT_NEAR(g.lipschitz_modulus(2.0), 12.0, 0.05);
}
