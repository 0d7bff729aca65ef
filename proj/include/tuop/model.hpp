#pragma once

// Parameters of the truncated-unitary weight (1-|z|^2)^(alpha-1) |z-x|^gamma
// on the unit disc, the contour weight w(z), and the potential phi.
//
// Branch conventions (used by every complex power in the library):
//   log z            principal, cut (-inf, 0]
//   (1 - x^2 z)^p    exp(p log(1 - x^2 z)), cut [x^-2, inf)
//   h_g(z)           exp((g/2) log(1 - 1/z)), cut [0, 1], h_g(inf) = 1

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "tuop/errors.hpp"

namespace tuop {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kCutTol = 1e-14;

struct ModelParams {
    int n = 1;
    int N = 2;
    double alpha = 1.0;
    cplx gamma{0.0, 0.0};
    double x = 0.0;
    double mu = 0.5;
    double c = 1.0;

    /// Validating constructor; alpha = N - n.
    static ModelParams make(int n, int N, cplx gamma, double x) {
        if (n < 0) throw DomainError("n must be non-negative");
        if (N <= n) throw DomainError("N must exceed n");
        if (!(gamma.real() > -2.0)) throw DomainError("Re(gamma) must exceed -2");
        if (!(x >= 0.0 && x < 1.0)) throw DomainError("x must lie in [0, 1)");
        ModelParams p;
        p.n = n;
        p.N = N;
        p.alpha = static_cast<double>(N - n);
        p.gamma = gamma;
        p.x = x;
        p.mu = n > 0 ? static_cast<double>(n) / N : 0.0;
        p.c = n > 0 ? p.alpha / n : 0.0;
        return p;
    }

    /// Same alpha, gamma and x with a different degree n (N shifts accordingly).
    ModelParams with_n(int m) const { return make(m, m + (N - n), gamma, x); }

    double g2() const { return 0.5 * gamma.real(); }

    /// Saddle point of phi; requires x > 0.
    double z0() const {
        if (x <= 0.0) throw DomainError("saddle point needs x > 0");
        return 1.0 / (x * x * (1.0 + c));
    }

    double ell(double r) const {
        if (!(r > 0.0) || (x > 0.0 && r >= 1.0 / (x * x)))
            throw DomainError("ell(r) needs 0 < r < x^-2");
        return std::log(r) + c * std::log1p(-x * x * r);
    }

    /// phi'(1) = (1 - x^2/mu) / (1 - x^2).
    double kappa() const { return (1.0 - (1.0 + c) * x * x) / (1.0 - x * x); }

    bool strong_regime() const { return x > 0.0 && x * x * (1.0 + c) < 1.0; }

    std::string describe() const {
        std::ostringstream os;
        os.precision(17);
        os << "n=" << n << " N=" << N << " gamma=" << gamma.real();
        if (gamma.imag() != 0.0) os << (gamma.imag() > 0 ? "+" : "") << gamma.imag() << "i";
        os << " x=" << x;
        return os.str();
    }
};

inline bool on_real_segment(cplx z, double lo, double hi) {
    const double tol = kCutTol * (1.0 + std::abs(z));
    return std::abs(z.imag()) <= tol && z.real() >= lo - tol && z.real() <= hi + tol;
}

/// log(1 - x^2 z), cut [x^-2, inf).
inline cplx log_1mx2z(cplx z, double x) {
    if (x > 0.0 && on_real_segment(z, 1.0 / (x * x), HUGE_VAL))
        throw DomainError("evaluation on the cut [x^-2, inf)");
    return std::log(1.0 - x * x * z);
}

/// h_g(z) = ((z-1)/z)^(g/2), cut [0, 1].
inline cplx h_gamma(cplx z, cplx g) {
    if (on_real_segment(z, 0.0, 1.0)) throw DomainError("evaluation on the cut [0, 1]");
    if (g == 0.0) return 1.0;
    return std::exp(0.5 * g * std::log(1.0 - 1.0 / z));
}

inline cplx log_h_gamma(cplx z, cplx g) {
    if (on_real_segment(z, 0.0, 1.0)) throw DomainError("evaluation on the cut [0, 1]");
    return 0.5 * g * std::log(1.0 - 1.0 / z);
}

inline cplx log_weight_contour(cplx z, const ModelParams& p) {
    return (p.alpha + 0.5 * p.gamma) * log_1mx2z(z, p.x) + log_h_gamma(z, p.gamma);
}

/// w(z) = (1 - x^2 z)^(alpha + gamma/2) h_gamma(z); analytic on 1 < |z| < x^-2.
inline cplx weight_contour(cplx z, const ModelParams& p) {
    return std::exp(log_weight_contour(z, p));
}

/// Planar density, zero outside the open unit disc.
inline double weight_planar(cplx z, const ModelParams& p) {
    const double r2 = std::norm(z);
    if (r2 >= 1.0) return 0.0;
    const double d = std::abs(z - p.x);
    const double g = p.gamma.real();
    const double base = std::pow(1.0 - r2, p.alpha - 1.0);
    if (g == 0.0) return base;
    return base * std::pow(d, g);
}

enum class PhiVariant { plain, shifted, tilde };

struct PhiEval {
    cplx value;
    cplx d1;
    cplx d2;
};

/// phi(z) = log z + c log(1 - x^2 z); shifted subtracts ell(r); tilde uses c + gamma/(2n).
inline PhiEval phi(cplx z, const ModelParams& p, PhiVariant v = PhiVariant::plain, double r = 1.0) {
    if (on_real_segment(z, -HUGE_VAL, 0.0)) throw DomainError("evaluation on the cut (-inf, 0]");
    const double x2 = p.x * p.x;
    cplx cc = p.c;
    if (v == PhiVariant::tilde) cc += p.gamma / (2.0 * p.n);
    const cplx l = log_1mx2z(z, p.x);
    const cplx q = 1.0 - x2 * z;
    PhiEval e;
    e.value = std::log(z) + cc * l;
    e.d1 = 1.0 / z - cc * x2 / q;
    e.d2 = -1.0 / (z * z) - cc * x2 * x2 / (q * q);
    if (v == PhiVariant::shifted) e.value -= p.ell(r);
    return e;
}

/// Re phi(z) with coefficient cc; continuous across both cuts.
inline double re_phi(cplx z, double x, double cc) {
    return std::log(std::abs(z)) + cc * std::log(std::abs(1.0 - x * x * z));
}

struct SaddleEll {
    double z0;
    double ell;
};

inline SaddleEll saddle_and_ell(const ModelParams& p, double r) {
    if (p.x <= 0.0) throw DomainError("saddle point needs x > 0");
    return {p.z0(), p.ell(r)};
}

}  // namespace tuop
