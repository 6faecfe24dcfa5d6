#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sts/theory.hpp"

namespace sts {

namespace th = theory;

namespace {

const std::vector<double> kAlphaGrid = {0.0, 0.5, 0.9, 0.99, 0.999};

/// Expectation of the direct-analysis expression conditional on tau, summed
/// over tau ~ Geometric(eps) on {0, 1, ...} until the tail is negligible.
double brute_force_over_tau(double alpha, double eps, bool corrected) {
    double total = 0.0;
    for (int t = 0; t < 100000; ++t) {
        const double w = eps * std::pow(1.0 - eps, t);
        const double at = std::pow(alpha, t);
        const double value = corrected
                                 ? ((1 - at) * (1 + eps) + at * eps) / (2 * (1 - alpha))
                                 : eps / (2 * (1 - alpha)) + (1 - at) * (1 - 2 * eps) / (2 * (1 - alpha));
        total += w * value;
        if (w < 1e-18) break;
    }
    return total;
}

double entropy_by_pmf(double p) {
    double h = 0.0;
    for (int k = 1; k < 1000000; ++k) {
        const double q = p * std::pow(1 - p, k - 1);
        if (q < 1e-300) break;
        h -= q * std::log(q);
        if (q < 1e-15 && k > 10) break;
    }
    return h;
}

}  // namespace

TEST(Theory, TsInfiniteRegret) {
    EXPECT_DOUBLE_EQ(th::ts_infinite_regret(0.9), 5.0);
    EXPECT_DOUBLE_EQ(th::ts_infinite_regret(0.0), 0.5);
    EXPECT_NEAR(th::ts_infinite_regret(0.99), 50.0, 1e-12);
    EXPECT_THROW(th::ts_infinite_regret(1.0), std::domain_error);
}

TEST(Theory, StsExactClosedForm) {
    EXPECT_NEAR(th::sts_infinite_regret_exact(0.9, 0.2), 1.8571428571428572, 1e-12);
    EXPECT_NEAR(th::sts_infinite_regret_exact(0.9, 0.2), brute_force_over_tau(0.9, 0.2, false), 1e-12);
    EXPECT_DOUBLE_EQ(th::sts_infinite_regret_exact(0.7, 0.5), 0.5 / (2 * 0.3));
    EXPECT_LE(th::sts_infinite_regret_exact(0.99, 0.1), 10.0);
    EXPECT_THROW(th::sts_infinite_regret_exact(0.9, 0.0), std::domain_error);
    EXPECT_THROW(th::sts_infinite_regret_exact(0.9, 1.0), std::domain_error);
}

TEST(Theory, StsConditionalClosedForm) {
    EXPECT_NEAR(th::sts_infinite_regret_conditional(0.9, 0.2), 2.4285714285714288, 1e-12);
    for (double a : kAlphaGrid)
        for (double e : {0.05, 0.2, 0.5, 0.9})
            EXPECT_NEAR(th::sts_infinite_regret_conditional(a, e), brute_force_over_tau(a, e, true),
                        1e-9 * th::sts_infinite_regret_conditional(a, e));
}

TEST(Theory, StsBound) {
    EXPECT_NEAR(th::sts_infinite_regret_bound(0.99), 10.0, 1e-12);
    EXPECT_DOUBLE_EQ(th::sts_infinite_regret_bound(0.0), 1.0);
    EXPECT_NEAR(th::sts_infinite_regret_bound(0.9999), 100.0, 1e-9);
}

TEST(Theory, GeometricEntropy) {
    EXPECT_NEAR(th::geometric_entropy(0.5), 2 * std::log(2.0), 1e-15);
    EXPECT_NEAR(th::geometric_entropy(0.5), entropy_by_pmf(0.5), 1e-12);
    EXPECT_LT(th::geometric_entropy(1.0 - 1e-12), 1e-10);
    EXPECT_NEAR(th::geometric_entropy(0.1), 3.25082973391448, 1e-12);
    EXPECT_NEAR(th::geometric_entropy(0.1), entropy_by_pmf(0.1), 1e-10);
    EXPECT_LE(th::geometric_entropy(0.1), 1 + std::log(10.0));
    EXPECT_THROW(th::geometric_entropy(0.0), std::domain_error);
}

TEST(Theory, DeterministicInformationRatio) {
    EXPECT_NEAR(th::info_ratio_bound_deterministic(0.5), 0.36067376022224085, 1e-12);
    EXPECT_NEAR(th::info_ratio_bound_deterministic(0.1), 0.7690344326307211, 1e-12);
    for (double e : {0.01, 0.1, 0.3, 0.7, 0.99})
        EXPECT_NEAR(th::info_ratio_bound_deterministic(e) * th::geometric_entropy(e), 1.0 / (4 * e), 1e-12);
}

TEST(Theory, Theorem4Bound) {
    EXPECT_NEAR(th::sts_theorem4_regret_bound(0.98), 10.0, 1e-12);
    EXPECT_DOUBLE_EQ(th::sts_theorem4_regret_bound(0.0), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(th::sts_theorem4_regret_bound(0.5), 2.0);
    EXPECT_NEAR(th::sts_theorem4_tolerance(0.98), 0.1, 1e-12);
}

TEST(Theory, NoisyBound) {
    const auto in = th::uniform_bound_inputs(0.9, 0.2);
    EXPECT_EQ(in.delta, 0.2);
    EXPECT_DOUBLE_EQ(in.l_gap, 0.4);
    EXPECT_NEAR(th::noisy_info_ratio_bound(0.9, 0.2), 42.607312068216515, 1e-12);
    EXPECT_NEAR(th::noisy_entropy_bound(0.2), 2.6094379124341005, 1e-12);
    EXPECT_NEAR(th::sts_noisy_regret_bound(in), 26.190160620179437, 1e-10);

    const th::BoundInputs full{0.9, 0.2, 1.0, 0.0};
    const double l = std::log(1.0 / (1.0 - 0.81));
    EXPECT_NEAR(th::sts_noisy_regret_bound(full), 2.0 + std::sqrt((10.0 + 2.0 * l) / 0.19), 1e-12);
    EXPECT_THROW(th::sts_noisy_regret_bound(th::BoundInputs{0.9, 0.2, 0.0, 0.0}), std::domain_error);
}

TEST(Theory, NoisyBoundDecreasesInDelta) {
    for (double a : {0.5, 0.9, 0.99}) {
        double prev = INFINITY;
        for (double d = 0.01; d <= 1.0; d += 0.01) {
            const double b = th::sts_noisy_regret_bound(th::BoundInputs{a, 0.2, d, 0.0});
            EXPECT_LT(b, prev);
            prev = b;
        }
    }
}

TEST(Theory, BetaPriorInputsReduceToUniform) {
    for (double e : {0.05, 0.2, 0.6}) {
        const auto b = th::beta_bound_inputs(0.9, e, 1.0, 1.0);
        const auto u = th::uniform_bound_inputs(0.9, e);
        EXPECT_NEAR(b.delta, u.delta, 1e-14);
        EXPECT_NEAR(b.l_gap, u.l_gap, 1e-14);
    }
    // Beta(2,1): P(theta > 0.8) = 1 - 0.64.
    EXPECT_NEAR(th::beta_bound_inputs(0.9, 0.2, 2.0, 1.0).delta, 0.36, 1e-14);
}

TEST(Theory, PropertyGrid) {
    for (double d = 0.001; d < 1.0; d += 0.001) EXPECT_LE(th::geometric_entropy(d), 1 + std::log(1 / d) + 1e-12);
    for (double a : kAlphaGrid) {
        for (double e = 0.01; e < 1.0; e += 0.01) {
            EXPECT_LE(th::sts_infinite_regret_exact(a, e), th::sts_infinite_regret_relaxation(a, e) + 1e-12);
            EXPECT_LE(th::sts_infinite_regret_conditional(a, e), th::sts_infinite_regret_relaxation(a, e) + 1e-12);
        }
        if (a > 0.0) {
            const double e = th::sts_infinite_tolerance(a);
            EXPECT_LE(th::sts_infinite_regret_exact(a, e), th::sts_infinite_regret_bound(a) + 1e-12);
            EXPECT_LE(th::sts_infinite_regret_conditional(a, e), th::sts_infinite_regret_bound(a) + 1e-12);
        }
    }
    double prev = 0.0;
    for (double a : kAlphaGrid) {
        const double ratio = th::ts_infinite_regret(a) / th::sts_infinite_regret_bound(a);
        EXPECT_GT(ratio, prev);
        prev = ratio;
    }
}

}  // namespace sts
