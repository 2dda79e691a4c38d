#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pdestab/kernel.hpp"

using namespace pdestab;

TEST(Kernel, LinearScalars) {
    const auto k = Kernel::linear();
    EXPECT_EQ(k.mu(), 0.0);
    EXPECT_DOUBLE_EQ(k.k_prime_1(), 1.0);
    EXPECT_NEAR(k.norm2_sq(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(k.norm_dk_sq(), 1.0, 1e-15);
    EXPECT_NEAR(k.k1(), kSqrt2 / kPi, 1e-15);
    EXPECT_NEAR(k.k1(), 0.450158, 1e-6);
    EXPECT_NEAR(k.hs_norm() * k.hs_norm(), 1.0 / 12.0, 1e-15);
}

TEST(Kernel, LinearScalarsAgreeWithQuadrature) {
    const auto s = oracle::scalars([](double x) { return x; }, [](double) { return 1.0; }, 0.0);
    const auto k = Kernel::linear();
    EXPECT_NEAR(k.k1(), s.k1, 1e-13);
    EXPECT_NEAR(k.norm2_sq(), s.norm2_sq, 1e-13);
}

TEST(Kernel, SinhScalars) {
    const auto k = Kernel::make(KernelFamily::sinh, 1.0);
    EXPECT_DOUBLE_EQ(k.mu(), 1.0);
    EXPECT_NEAR(k.norm2_sq(), oracle::SinhOne::norm2_sq, 1e-13);
    EXPECT_NEAR(k.k1(), oracle::SinhOne::k1, 1e-13);
    EXPECT_NEAR(k.norm_dk_sq(), oracle::SinhOne::norm_dk_sq, 1e-13);
    EXPECT_NEAR(k.hs_norm() * k.hs_norm(), oracle::SinhOne::hs_sq, 1e-13);
    EXPECT_NEAR(k.k_prime_1(), std::cosh(1.0) / std::sinh(1.0), 1e-14);
    EXPECT_NEAR(k.lp_norm(4.0), oracle::SinhOne::l4, 1e-9);
    EXPECT_NEAR(k.lp_norm(4.0 / 3.0), oracle::SinhOne::l43, 1e-8);
}

TEST(Kernel, SinScalars) {
    const auto k = Kernel::make(KernelFamily::sin, 2.0);
    EXPECT_DOUBLE_EQ(k.mu(), -4.0);
    EXPECT_NEAR(k.norm2_sq(), oracle::SinTwo::norm2_sq, 1e-13);
    EXPECT_NEAR(k.k1(), oracle::SinTwo::k1, 1e-8);
    EXPECT_NEAR(k.norm_dk_sq(), oracle::SinTwo::norm_dk_sq, 1e-13);
    EXPECT_NEAR(k.hs_norm() * k.hs_norm(), oracle::SinTwo::hs_sq, 1e-13);
    EXPECT_NEAR(k.lp_norm(4.0), oracle::SinTwo::l4, 1e-9);
}

TEST(Kernel, SmallParametersStayAccurate) {
    for (double c : {1e-6, 1e-3, 0.1, 0.49, 0.51}) {
        const auto k = Kernel::make(KernelFamily::sinh, c);
        const auto s = oracle::scalars([c](double x) { return std::sinh(c * x) / std::sinh(c); },
                                       [c](double x) { return c * std::cosh(c * x) / std::sinh(c); }, c * c);
        EXPECT_NEAR(k.norm2_sq(), s.norm2_sq, 1e-12) << c;
        EXPECT_NEAR(k.k1(), s.k1, 1e-12) << c;
        EXPECT_NEAR(k.norm_dk_sq(), s.norm_dk_sq, 1e-12) << c;
        const auto ks = Kernel::make(KernelFamily::sin, c);
        const auto t = oracle::scalars([c](double x) { return std::sin(c * x) / std::sin(c); },
                                       [c](double x) { return c * std::cos(c * x) / std::sin(c); }, -c * c);
        EXPECT_NEAR(ks.norm2_sq(), t.norm2_sq, 1e-12) << c;
        EXPECT_NEAR(ks.k1(), t.k1, 1e-12) << c;
        EXPECT_NEAR(ks.norm_dk_sq(), t.norm_dk_sq, 1e-12) << c;
    }
}

TEST(Kernel, EndpointValuesExact) {
    for (auto fam : {KernelFamily::linear, KernelFamily::sinh, KernelFamily::sin}) {
        const auto k = Kernel::make(fam, 1.7, 101);
        EXPECT_EQ(k.samples().front(), 0.0);
        EXPECT_EQ(k.samples().back(), 1.0);
    }
}

TEST(Kernel, MuResidualSmall) {
    for (double c : {0.5, 2.0, 10.0}) EXPECT_LE(Kernel::make(KernelFamily::sinh, c).mu_residual(), 1e-6);
    for (double w : {0.5, 2.0, 4.0, 7.5}) EXPECT_LE(Kernel::make(KernelFamily::sin, w).mu_residual(), 1e-6);
}

TEST(Kernel, StrictCauchySchwarzAcrossFamilies) {
    for (int i = 1; i <= 40; ++i) {
        const double par = 0.25 * i;
        for (auto fam : {KernelFamily::sinh, KernelFamily::sin}) {
            if (fam == KernelFamily::sin && std::abs(par - kPi * std::round(par / kPi)) < 1e-3) continue;
            const auto k = Kernel::make(fam, par);
            EXPECT_GT(k.k1() * k.k1(), 0.0);
            EXPECT_LT(k.k1() * k.k1(), k.norm2_sq());
        }
    }
}

TEST(Kernel, ResonantFrequencyIsDegenerate) {
    try {
        Kernel::make(KernelFamily::sin, 2 * kPi);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_kernel);
    }
    EXPECT_THROW(Kernel::make(KernelFamily::sinh, -1.0), Error);
    EXPECT_THROW(Kernel::make(KernelFamily::sin, 0.0), Error);
}

TEST(KernelLpNorm, LinearClosedForms) {
    const auto k = Kernel::linear();
    EXPECT_NEAR(kernel_lp_norm(k, 4.0), 0.66874, 1e-5);
    EXPECT_NEAR(kernel_lp_norm(k, 4.0 / 3.0), std::pow(3.0 / 7.0, 0.75), 1e-7);
    EXPECT_NEAR(kernel_lp_norm(k, 2.0), 1.0 / std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(k.lp_norm(4.0) * k.lp_norm(4.0 / 3.0) * oracle::example_r(), 1.0, 1e-14);
}

TEST(Kernel, SamplesMatchPointEvaluation) {
    const auto k = Kernel::make(KernelFamily::sinh, 2.0, 51);
    for (std::size_t i = 0; i < 51; ++i) {
        const double x = static_cast<double>(i) / 50;
        EXPECT_NEAR(k.samples()[i], std::sinh(2 * x) / std::sinh(2.0), 1e-14);
        EXPECT_NEAR(k.antiderivative(x), (std::cosh(2 * x) - 1) / (2 * std::sinh(2.0)), 1e-14);
    }
}

TEST(Kernel, ParseFamily) {
    EXPECT_EQ(parse_kernel_family("sinh"), KernelFamily::sinh);
    EXPECT_FALSE(parse_kernel_family("cosh").has_value());
}
