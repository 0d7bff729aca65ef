#include <cmath>

#include <gtest/gtest.h>

#include "tuop/model.hpp"

using namespace tuop;

TEST(Model, MakeDerivesAlphaMuC) {
    const ModelParams p = ModelParams::make(10, 25, 1.0, 0.3);
    EXPECT_DOUBLE_EQ(p.alpha, 15.0);
    EXPECT_DOUBLE_EQ(p.mu, 0.4);
    EXPECT_DOUBLE_EQ(p.c, 1.5);
}

TEST(Model, MakeRejectsInvalidInput) {
    EXPECT_THROW(ModelParams::make(5, 5, 1.0, 0.3), DomainError);
    EXPECT_THROW(ModelParams::make(5, 8, -2.0, 0.3), DomainError);
    EXPECT_THROW(ModelParams::make(5, 8, 1.0, 1.0), DomainError);
    EXPECT_THROW(ModelParams::make(5, 8, 1.0, -0.1), DomainError);
    EXPECT_THROW(ModelParams::make(-1, 8, 1.0, 0.1), DomainError);
}

TEST(Model, WeightMatchesDirectPowers) {
    const ModelParams p = ModelParams::make(4, 9, 1.3, 0.5);
    const cplx z(1.7, 0.6);
    const cplx direct = std::pow(1.0 - 0.25 * z, p.alpha + 0.65) * std::pow((z - 1.0) / z, 0.65);
    EXPECT_LT(std::abs(weight_contour(z, p) / direct - 1.0), 1e-13);
}

TEST(Model, WeightRefusesCuts) {
    const ModelParams p = ModelParams::make(4, 9, 1.0, 0.5);
    EXPECT_THROW(weight_contour(0.5, p), DomainError);
    EXPECT_THROW(weight_contour(5.0, p), DomainError);
    EXPECT_NO_THROW(weight_contour(2.0, p));
}

TEST(Model, PlanarWeightVanishesOutsideDisc) {
    const ModelParams p = ModelParams::make(4, 9, 1.0, 0.5);
    EXPECT_EQ(weight_planar(cplx(1.0, 0.1), p), 0.0);
    EXPECT_NEAR(weight_planar(cplx(0.0, 0.5), p), std::pow(0.75, 4.0) * std::abs(cplx(-0.5, 0.5)), 1e-15);
}

TEST(Model, PhiDerivativesMatchFiniteDifferences) {
    const ModelParams p = ModelParams::make(6, 15, 1.0, 0.4);
    const cplx z(0.8, 0.9);
    const double h = 1e-5;
    const PhiEval e = phi(z, p);
    const cplx d1 = (phi(z + h, p).value - phi(z - h, p).value) / (2.0 * h);
    const cplx d2 = (phi(z + h, p).d1 - phi(z - h, p).d1) / (2.0 * h);
    EXPECT_LT(std::abs(e.d1 - d1), 1e-9);
    EXPECT_LT(std::abs(e.d2 - d2), 1e-8);
}

TEST(Model, SaddleIsCriticalPointAndKappaIsPhiPrimeAtOne) {
    const ModelParams p = ModelParams::make(6, 15, 1.0, 0.4);
    EXPECT_LT(std::abs(phi(p.z0(), p).d1), 1e-14);
    EXPECT_NEAR(phi(1.0 + cplx(0, 1e-300), p).d1.real(), p.kappa(), 1e-14);
    EXPECT_TRUE(p.strong_regime());
    EXPECT_FALSE(ModelParams::make(6, 15, 1.0, 0.8).strong_regime());
}

TEST(Model, EllIsPhiAtR) {
    const ModelParams p = ModelParams::make(6, 15, 1.0, 0.4);
    EXPECT_NEAR(p.ell(1.3), phi(1.3 + cplx(0, 1e-300), p).value.real(), 1e-14);
    EXPECT_THROW(p.ell(1.0 / 0.16), DomainError);
}
