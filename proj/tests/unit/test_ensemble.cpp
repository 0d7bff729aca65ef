#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "tuop/ensemble.hpp"
#include "tuop/orthopoly.hpp"

using namespace tuop;

TEST(Ensemble, HaarIsUnitaryAndTruncationContracts) {
    const EnsembleSample s = sample_truncation(6, 14, 0.3, 11, 0);
    EXPECT_LT(s.unitarity_error, 1e-12);
    ASSERT_EQ(s.eigenvalues.size(), 6u);
    for (cplx l : s.eigenvalues) EXPECT_LT(std::abs(l), 1.0);
}

TEST(Ensemble, FirstColumnPhasesAreUniform) {
    // Haar: arg U_11 uniform, so E U_11 = 0 and E U_11^2 = 0
    cplx m1 = 0.0, m2 = 0.0;
    const int S = 4000;
    for (int i = 0; i < S; ++i) {
        auto rng = stream_rng(3, i);
        const cplx u = haar_unitary(4, rng)(0, 0);
        m1 += u;
        m2 += u * u;
    }
    EXPECT_LT(std::abs(m1) / S, 0.03);
    EXPECT_LT(std::abs(m2) / S, 0.03);
}

TEST(Ensemble, FastLogdetMatchesEigenvalueRouteInDistribution) {
    // means of log|det(B - x)| from two independent constructions agree within 5 SE
    const int S = 3000;
    double a = 0.0, b = 0.0, a2 = 0.0, b2 = 0.0;
    for (int i = 0; i < S; ++i) {
        const double la = sample_truncation(4, 9, 0.5, 1, i).logdet;
        const double lb = sample_logdet(4, 9, 0.5, 2, i);
        a += la, b += lb, a2 += la * la, b2 += lb * lb;
    }
    a /= S, b /= S;
    const double se = std::sqrt((a2 / S - a * a + b2 / S - b * b) / S);
    EXPECT_LT(std::abs(a - b), 5.0 * se);
}

TEST(Ensemble, McMatchesExactSecondMoment) {
    const ModelParams p = ModelParams::make(3, 7, 2.0, 0.4);
    const McEstimate e = mc_rgamma(p, 20000, 5);
    EXPECT_LT(std::abs(e.mean - std::exp(rgamma_exact(p))), 5.0 * e.standard_error);
}

TEST(Ensemble, OneByOneSecondMomentClosedForm) {
    // E|U_11 - x|^2 = 1/N + x^2
    const McEstimate e = mc_rgamma(ModelParams::make(1, 5, 2.0, 0.4), 20000, 9);
    EXPECT_LT(std::abs(e.mean - 0.36), 5.0 * e.standard_error);
}

TEST(Ensemble, GammaZeroAndHeavyTail) {
    const McEstimate e = mc_rgamma(ModelParams::make(4, 8, 0.0, 0.3), 10, 1);
    EXPECT_EQ(e.mean, 1.0);
    EXPECT_EQ(e.standard_error, 0.0);
    EXPECT_THROW(mc_rgamma(ModelParams::make(4, 8, -1.2, 0.3), 10, 1), DomainError);
    EXPECT_TRUE(mc_rgamma(ModelParams::make(4, 8, -1.2, 0.3), 10, 1, true).variance_warning);
}

TEST(Ensemble, SizeLimits) {
    EXPECT_THROW(sample_logdet(4, 4, 0.3, 1, 0), DomainError);
    EXPECT_THROW(sample_logdet(4, 600, 0.3, 1, 0), DomainError);
}

TEST(Ensemble, ResultsIndependentOfThreadCount) {
    setenv("TUOP_THREADS", "1", 1);
    const auto a = sample_logdets(5, 11, 0.3, 64, 77);
    setenv("TUOP_THREADS", "3", 1);
    const auto b = sample_logdets(5, 11, 0.3, 64, 77);
    unsetenv("TUOP_THREADS");
    EXPECT_EQ(a, b);
}

TEST(Ensemble, KsDistanceOfNormalQuantiles) {
    // midpoint quantiles of N(0,1): KS distance is exactly 1/(2m)
    std::vector<double> v;
    const int m = 200;
    for (int i = 0; i < m; ++i) {
        const double q = (i + 0.5) / m;
        double lo = -10, hi = 10;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (normal_cdf(mid) < q ? lo : hi) = mid;
        }
        v.push_back(0.5 * (lo + hi));
    }
    EXPECT_NEAR(ks_distance_normal(v), 0.5 / m, 1e-12);
    EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
}
