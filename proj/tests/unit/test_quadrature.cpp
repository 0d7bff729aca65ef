#include <cmath>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <gtest/gtest.h>

#include "tuop/quadrature.hpp"

using namespace tuop;

TEST(Quadrature, CompensatedSumRecoversSmallTerms) {
    CompensatedSum<double> s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    s.add(-1.0);
    EXPECT_NEAR(s.value(), 1e-13, 1e-20);
}

TEST(Quadrature, CircleMomentOfExponential) {
    // oint z^-j e^z dz/(2iz) = pi / j!
    for (int j = 0; j <= 8; ++j) {
        const QuadValue q = circle_moment([](cplx z) { return std::exp(z); }, 1.5, j, 64);
        EXPECT_NEAR(q.value.real(), kPi / boost::math::factorial<double>(j), 1e-14);
        EXPECT_NEAR(q.value.imag(), 0.0, 1e-14);
    }
}

TEST(Quadrature, ContourIntegralResidue) {
    const cplx a(0.2, -0.1);
    const cplx I = contour_integral([&](cplx z) { return std::cos(z) / (z - a); }, circle_grid(1.0, 128));
    EXPECT_LT(std::abs(I - cplx(0.0, 2.0 * kPi) * std::cos(a)), 1e-13);
}

TEST(Quadrature, CircleFftLaurentCoefficients) {
    const auto c = circle_fft([](cplx z) { return 3.0 + 2.0 * z - 1.0 / z; }, 1.0, 16);
    EXPECT_NEAR(std::abs(c[0] - 3.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(c[1] - 2.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(c[15] + 1.0), 0.0, 1e-14);
}

TEST(Quadrature, GaussJacobiIntegratesBetaMoments) {
    // int_0^1 t^(b+k) (1-t)^a dt = B(b+k+1, a+1)
    for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{2.0, 1.5}, std::pair{-0.5, 0.25}}) {
        const GaussRule g = gauss_jacobi01(12, a, b);
        for (int k = 0; k < 20; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
            EXPECT_NEAR(s / boost::math::beta(b + k + 1.0, a + 1.0), 1.0, 1e-12) << a << " " << b << " " << k;
        }
    }
}

TEST(Quadrature, GaussJacobiRejectsBadExponents) {
    EXPECT_THROW(gauss_jacobi01(4, -1.0, 0.0), DomainError);
    EXPECT_THROW(gauss_jacobi01(0, 0.0, 0.0), DomainError);
}

TEST(Quadrature, DiscGridTotalMass) {
    // gamma = 0: int_D (1-|z|^2)^(alpha-1) d^2z = pi / alpha
    const ModelParams p = ModelParams::make(3, 7, 0.0, 0.4);
    const DiscGrid d = make_disc_grid(p, 32, 256);
    double s = 0.0;
    for (double w : d.weights) s += w;
    EXPECT_NEAR(s, kPi / p.alpha, 1e-12);
}

TEST(Quadrature, DiscGridSecondMomentOfDistance) {
    // gamma = 2, alpha = 1: int_D |z-x|^2 d^2z = pi/2 + pi x^2
    const ModelParams p = ModelParams::make(1, 2, 2.0, 0.3);
    const DiscGrid d = make_disc_grid(p, 16, 256);
    double s = 0.0;
    for (double w : d.weights) s += w;
    EXPECT_NEAR(s, kPi / 2.0 + kPi * 0.09, 1e-12);
}
