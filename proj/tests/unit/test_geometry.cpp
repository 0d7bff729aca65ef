#include <cmath>

#include <gtest/gtest.h>

#include "tuop/geometry.hpp"

using namespace tuop;

TEST(Geometry, ZeroChargeGivesCircle) {
    const ModelParams p = ModelParams::make(10, 20, 1.0, 0.0);
    const LevelCurve L = trace_gamma(p, 0.7, 64, Component::inner);
    for (cplx z : L.points) EXPECT_NEAR(std::abs(z), 0.7, 1e-14);
}

TEST(Geometry, PointsLieOnLevelSet) {
    const ModelParams p = ModelParams::make(20, 50, 1.0, 0.4);
    const LevelCurve L = trace_gamma(p, 1.0, 360, Component::inner);
    const double level = std::log(1.0) + p.c * std::log(1.0 - 0.16);
    for (cplx z : L.points) EXPECT_NEAR(std::log(std::abs(z)) + p.c * std::log(std::abs(1.0 - 0.16 * z)), level, 1e-12);
    EXPECT_LT(L.residual, 1e-12);
}

TEST(Geometry, TangentsMatchChordDifferences) {
    const ModelParams p = ModelParams::make(20, 50, 1.0, 0.4);
    const std::size_t M = 2048;
    const LevelCurve L = trace_gamma(p, 1.0, M, Component::inner);
    const double dth = L.theta[1] - L.theta[0];
    for (std::size_t k = 1; k + 1 < M; k += 97) {
        const cplx fd = (L.points[k + 1] - L.points[k - 1]) / (2.0 * dth);
        EXPECT_LT(std::abs(fd - L.derivatives[k]) / std::abs(L.derivatives[k]), 1e-4);
    }
}

TEST(Geometry, InnerCurveIsJordanAroundOriginAndOne) {
    const ModelParams p = ModelParams::make(20, 50, 1.0, 0.4);
    const LevelCurve L = trace_gamma(p, 1.0, 720, Component::inner);
    EXPECT_TRUE(is_jordan(L));
    EXPECT_EQ(real_axis_crossings(L), 2);
    EXPECT_EQ(winding_number(L, 0.3), 1);
    EXPECT_EQ(winding_number(L, 5.0), 0);
    EXPECT_LT(distance_to_curve(L, 1.0), 1e-9);  // r = 1 passes through z = 1
}

TEST(Geometry, CircleWindingAndDistance) {
    const ModelParams p = ModelParams::make(10, 20, 1.0, 0.0);
    const LevelCurve L = trace_gamma(p, 2.0, 400, Component::inner);
    EXPECT_EQ(winding_number(L, cplx(0.5, 0.5)), 1);
    EXPECT_EQ(winding_number(L, cplx(3.0, 0.0)), 0);
    EXPECT_NEAR(distance_to_curve(L, cplx(0.0, 0.5)), 1.5, 1e-3);
}

TEST(Geometry, SaddleReport) {
    const ModelParams p = ModelParams::make(20, 50, 1.0, 0.4);
    const SaddleReport s = saddle_report(p);
    EXPECT_NEAR(s.z0, 1.0 / (0.16 * 2.5), 1e-14);
    // phi''(z0) by central differences of phi along the real axis
    const double h = 1e-4;
    auto f = [&](double z) { return std::log(z) + p.c * std::log(1.0 - 0.16 * z); };
    EXPECT_NEAR(s.phi2_z0, (f(s.z0 + h) - 2.0 * f(s.z0) + f(s.z0 - h)) / (h * h), 1e-5);
    EXPECT_NEAR(s.phi_z0, f(s.z0), 1e-14);
}

TEST(Geometry, ClassifyRegions) {
    const ModelParams p = ModelParams::make(40, 100, 1.0, 0.3);
    const LevelCurve g1 = trace_gamma(p, 1.0, 720, Component::inner);
    const double uw = 5.0 / p.n;
    EXPECT_EQ(classify(1.0 + 0.02, p, g1, uw, 4.0).region, Region::Disc1);
    EXPECT_EQ(classify(0.2, p, g1, uw, 4.0).region, Region::IntGamma1);
    EXPECT_EQ(classify(cplx(-2.0, 1.0), p, g1, uw, 4.0).region, Region::ExtGamma1);
    EXPECT_EQ(classify(g1.points[180], p, g1, uw, 4.0).region, Region::NbhdU);
}
