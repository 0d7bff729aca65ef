#include <cmath>

#include <gtest/gtest.h>

#include "tuop/asymptotics.hpp"
#include "tuop/orthopoly.hpp"

using namespace tuop;

TEST(Asymptotics, LogAddHandlesNegativeInfinity) {
    const cplx a = std::log(cplx(2.0, 1.0)), b = std::log(cplx(-0.5, 3.0));
    EXPECT_LT(std::abs(std::exp(detail::log_add(a, b)) - cplx(1.5, 4.0)), 1e-14);
    EXPECT_EQ(detail::log_add(detail::kNegInf, a), a);
}

TEST(Asymptotics, ExteriorFormulaMatchesExactPolynomial) {
    const ModelParams p = ModelParams::make(40, 100, 1.0, 0.3);
    const PolyPair pp = monic_pair(p, p.n, moments(p, p.n + 1));
    for (double th : {0.3, 1.5, 2.9, 4.4}) {
        const cplx z = std::polar(1.6, th);
        const cplx d = pn_ext(z, p).log_value - std::log(poly_eval(pp.P, z));
        EXPECT_LT(std::abs(std::exp(d) - 1.0), 1e-6) << th;
    }
}

TEST(Asymptotics, InteriorErrorDecreasesWithN) {
    auto err = [](int n) {
        const ModelParams p = ModelParams::make(n, 2 * n + n / 2, 1.0, 0.3);
        const PolyPair pp = monic_pair(p, p.n, moments(p, p.n + 1));
        double e = 0.0;
        for (double th : {0.4, 1.9, 3.3}) {
            const cplx z = std::polar(0.45, th);
            e = std::max(e, std::abs(std::exp(pn_int(z, p).log_value - std::log(poly_eval(pp.P, z))) - 1.0));
        }
        return e;
    };
    const double e20 = err(20), e40 = err(40);
    EXPECT_LT(e40, 0.1);
    EXPECT_LT(e40, 0.75 * e20);
}

TEST(Asymptotics, RgammaAsymptoticRatioApproachesOne) {
    auto gap = [](int n) {
        const ModelParams p = ModelParams::make(n, 2 * n, 1.0, 0.3);
        return std::abs(rgamma_exact(p) - rgamma_asymptotic(p));
    };
    const double g20 = gap(20), g60 = gap(60);
    EXPECT_LT(g60, 0.05);
    EXPECT_LT(g60, g20);
}

TEST(Asymptotics, RgammaAsymptoticDomain) {
    EXPECT_THROW(rgamma_asymptotic(ModelParams::make(10, 20, 1.0, 0.8)), DomainError);
    EXPECT_NEAR(rgamma_asymptotic(ModelParams::make(10, 20, 0.0, 0.3)), 0.0, 1e-12);
}

TEST(Asymptotics, CriticalPointInvertsScaling) {
    const ModelParams p = ModelParams::make(40, 100, 1.0, 0.3);
    const cplx a(1.2, -0.7);
    EXPECT_LT(std::abs(p.kappa() * p.n * (1.0 - critical_point(p, a)) - a), 1e-12);
}

TEST(Asymptotics, ExteriorIntegralMatchesContourSum) {
    const ModelParams p = ModelParams::make(40, 100, 1.0, 0.3);
    const LevelCurve gt = trace_gamma(p, 1.1, 2048, Component::inner);
    for (cplx z : {cplx(2.0, 0.0), cplx(0.0, 1.5)}) {
        const cplx d = integral_asymptotic(z, p, IntegralRegime::exterior).log_value - std::log(integral_direct(z, p, gt));
        EXPECT_LT(std::abs(std::exp(d) - 1.0), 0.1);
    }
}

TEST(Asymptotics, CltStandardize) {
    const ModelParams p = ModelParams::make(50, 100, 0.0, 0.3);
    const double k1 = 50 * std::log(0.5) + 50 * std::log(0.5 / 0.91);
    EXPECT_NEAR(kappa1(p), k1, 1e-12);
    EXPECT_NEAR(clt_standardize(0.5 * k1 + 1.0, p), 2.0 / std::sqrt(std::log(50.0)), 1e-14);
    EXPECT_THROW(clt_standardize(0.0, ModelParams::make(1, 3, 0.0, 0.3)), DomainError);
}
