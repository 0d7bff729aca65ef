#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>
#include <gtest/gtest.h>

#include "tuop/orthopoly.hpp"

using namespace tuop;

namespace {

// n = 1: B is the corner entry of a Haar N x N unitary, with density
// (N-1)/pi (1-|z|^2)^(N-2) on the unit disc. Polar coordinates about x put the
// |z-x|^gamma singularity at an endpoint, where tanh-sinh handles it.
double corner_moment(int N, double gamma, double x) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto ang = [&](double th) {
        const double ct = std::cos(th), st = std::sin(th);
        const double rmax = -x * ct + std::sqrt(1.0 - x * x * st * st);
        auto radial = [&](double rho) {
            const double r2 = std::norm(x + std::polar(rho, th));
            return std::pow(rho, gamma + 1.0) * std::pow(std::max(0.0, 1.0 - r2), N - 2);
        };
        return ts.integrate(radial, 0.0, rmax, 1e-14);
    };
    return (N - 1) / kPi * boost::math::quadrature::trapezoidal(ang, 0.0, 2.0 * kPi, 1e-13);
}

}  // namespace

TEST(Orthopoly, MomentsAtZeroChargeAreBinomial) {
    // x = 0: m[-k] = pi (-1)^k binom(g/2, k), m[k] = 0 for k > 0
    const ModelParams p = ModelParams::make(5, 9, 1.4, 0.0);
    const MomentTable mt = moments(p, 6);
    for (int k = 0; k <= 6; ++k) {
        double b = 1.0;
        for (int i = 0; i < k; ++i) b *= (0.7 - i) / (i + 1.0);
        EXPECT_NEAR(std::abs(mt[-k] - kPi * std::pow(-1.0, k) * b), 0.0, 1e-13) << k;
        if (k > 0) {
            EXPECT_NEAR(std::abs(mt[k]), 0.0, 1e-13);
        }
    }
}

TEST(Orthopoly, MomentsMatchDirectTrapezoid) {
    const ModelParams p = ModelParams::make(4, 9, 1.0, 0.5);
    const MomentTable mt = moments(p, 5);
    for (int j = -5; j <= 5; ++j) {
        const QuadValue q = circle_moment([&](cplx z) { return weight_contour(z, p); }, 2.0, j, 4096);
        EXPECT_LT(std::abs(mt[j] - q.value), 1e-12) << j;
    }
}

TEST(Orthopoly, RgammaZeroIsExactAtZeroCharge) {
    const ModelParams p = ModelParams::make(6, 10, 1.5, 0.0);
    EXPECT_NEAR(rgamma_exact(p), rgamma_zero(p), 1e-12);
}

TEST(Orthopoly, RgammaGammaZeroIsZero) {
    EXPECT_NEAR(rgamma_exact(ModelParams::make(8, 16, 0.0, 0.3)), 0.0, 1e-13);
}

TEST(Orthopoly, RgammaMatchesCornerEntryIntegral) {
    for (int N : {3, 6}) {
        for (double g : {1.0, 2.5, -0.5}) {
            for (double x : {0.2, 0.6}) {
                const double ref = corner_moment(N, g, x);
                EXPECT_NEAR(rgamma_exact(ModelParams::make(1, N, g, x)), std::log(ref), 1e-9)
                    << "N=" << N << " g=" << g << " x=" << x;
            }
        }
    }
}

TEST(Orthopoly, RgammaSquareClosedFormForOneByOne) {
    // E|u - x|^2 = E|u|^2 + x^2 = 1/N + x^2
    EXPECT_NEAR(rgamma_exact(ModelParams::make(1, 5, 2.0, 0.4)), std::log(0.2 + 0.16), 1e-13);
}

TEST(Orthopoly, MonicPairIsBiorthogonal) {
    const ModelParams p = ModelParams::make(7, 15, 1.0, 0.35);
    const MomentTable mt = moments(p, 8);
    const PolyPair pp = monic_pair(p, 7, mt);
    EXPECT_EQ(pp.P.back(), cplx(1.0));
    EXPECT_LT(pp.residual_P, 1e-12);
    // oint P z^-k w dz/(2iz) from the trapezoid directly
    for (int k = 0; k <= 7; ++k) {
        const cplx v =
            circle_moment([&](cplx z) { return poly_eval(pp.P, z) * weight_contour(z, p); }, 1.8, k, 4096).value;
        if (k < 7) {
            EXPECT_LT(std::abs(v), 1e-11) << k;
        } else {
            EXPECT_GT(std::abs(v), 1e-6);
        }
    }
}

TEST(Orthopoly, ContourChiMatchesPlanarGram) {
    const ModelParams p = ModelParams::make(4, 9, 1.0, 0.4);
    const PolyPair pp = monic_pair(p, 4, moments(p, 5));
    const PlanarChi pc = planar_chi(p, 4);
    EXPECT_NEAR(pp.chi / pc.chi, 1.0, 1e-10);
}

TEST(Orthopoly, ZerosAreRootsOfP) {
    const ModelParams p = ModelParams::make(9, 18, 1.0, 0.3);
    const PolyPair pp = monic_pair(p, 9, moments(p, 10));
    const auto zs = poly_zeros(pp.P);
    ASSERT_EQ(zs.size(), 9u);
    for (cplx z : zs) EXPECT_LT(std::abs(poly_eval(pp.P, z)), 1e-10);
}

TEST(Orthopoly, DifferentialIdentityMatchesFiniteDifference) {
    const ModelParams p = ModelParams::make(6, 12, 1.0, 0.3);
    const double h = 1e-4;
    const double fd = (rgamma_exact(ModelParams::make(6, 12, 1.0, 0.3 + h)) -
                       rgamma_exact(ModelParams::make(6, 12, 1.0, 0.3 - h))) / (2.0 * h);
    EXPECT_NEAR(diffid_rhs(p).value / fd, 1.0, 1e-6);
}
