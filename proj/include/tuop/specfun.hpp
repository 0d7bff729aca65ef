#pragma once

// Complex log-gamma, incomplete gamma (upper/lower), Beta and log Barnes G.

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "tuop/errors.hpp"
#include "tuop/model.hpp"

namespace tuop {

namespace detail {

// B_2k for k = 1..13
inline constexpr std::array<double, 13> kBernoulli2k = {
    1.0 / 6.0,       -1.0 / 30.0,          1.0 / 42.0,       -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0,      7.0 / 6.0,        -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0,    854513.0 / 138.0, -236364091.0 / 2730.0,
    8553103.0 / 6.0};

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;
inline constexpr double kZetaPrimeMinus1 = -0.16542114370045092921391966024278;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240;

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

inline cplx stirling_log_gamma(cplx z) {
    const cplx zi = 1.0 / z;
    const cplx zi2 = zi * zi;
    cplx s = 0.0;
    cplx p = zi;
    for (int k = 1; k <= 10; ++k) {
        s += kBernoulli2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= zi2;
    }
    return (z - 0.5) * std::log(z) - z + kLogSqrt2Pi + s;
}

}  // namespace detail

/// Principal branch of log Gamma(z), continuous off the negative real axis,
/// satisfying log_gamma(z+1) = log_gamma(z) + log z.
inline cplx log_gamma(cplx z) {
    if (detail::is_nonpositive_integer(z)) throw DomainError("log_gamma pole");
    if (z.imag() == 0.0 && z.real() > 0.0) return std::lgamma(z.real());
    cplx shift = 0.0;
    while (std::abs(z) < 15.0 || z.real() < 8.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return detail::stirling_log_gamma(z) - shift;
}

inline double log_gamma(double z) { return log_gamma(cplx(z, 0.0)).real(); }

inline cplx beta(cplx a, cplx b) { return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b)); }

inline cplx log_beta(cplx a, cplx b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

/// Barnes G: log G(z) with G(1) = 1, G(z+1) = Gamma(z) G(z).
inline cplx log_barnes_g(cplx z) {
    if (detail::is_nonpositive_integer(z)) throw DomainError("log_barnes_g zero at nonpositive integer");
    const bool real_pos = z.imag() == 0.0 && z.real() > 0.0;
    cplx shift = 0.0;
    while (std::abs(z) < 20.0 || z.real() < 10.0) {
        shift += real_pos ? cplx(std::lgamma(z.real()), 0.0) : log_gamma(z);
        z += 1.0;
    }
    const cplx w = z - 1.0;
    const cplx lw = std::log(w);
    const cplx wi2 = 1.0 / (w * w);
    cplx s = 0.0;
    cplx p = wi2;
    for (int k = 1; k <= 10; ++k) {
        s += detail::kBernoulli2k[k] / (4.0 * k * (k + 1.0)) * p;
        p *= wi2;
    }
    const cplx lg = (0.5 * w * w - 1.0 / 12.0) * lw - 0.75 * w * w + w * detail::kLogSqrt2Pi +
                    detail::kZetaPrimeMinus1 + s;
    return lg - shift;
}

inline double log_barnes_g(double z) { return log_barnes_g(cplx(z, 0.0)).real(); }

/// value * exp(log_scale); the split keeps huge or tiny magnitudes representable.
struct GammaResult {
    cplx value;
    double log_scale = 0.0;

    cplx combined() const { return value * std::exp(log_scale); }
    cplx log() const { return std::log(value) + log_scale; }

    static GammaResult from_log(cplx L) {
        return {std::exp(cplx(0.0, L.imag())), L.real()};
    }
};

enum class GammaKind { upper, lower };

struct IncGammaConfig {
    double crossover_min = 10.0;  // series below max(crossover_min, |a|), continued fraction above
    int max_iter = 20000;
    double eps = 1e-16;
};

namespace detail {

// S = sum_k z^k / (a (a+1) ... (a+k)), so that gamma(a,z) = z^a e^-z S.
inline cplx lower_series(cplx a, cplx z, const IncGammaConfig& cfg) {
    cplx term = 1.0 / a;
    cplx sum = term;
    for (int k = 1; k < cfg.max_iter; ++k) {
        term *= z / (a + static_cast<double>(k));
        sum += term;
        if (std::abs(term) <= cfg.eps * std::abs(sum)) return sum;
    }
    throw AccuracyError("incomplete gamma series did not converge");
}

// Modified Lentz for Gamma(a,z) = z^a e^-z * F.
inline cplx upper_cf(cplx a, cplx z, const IncGammaConfig& cfg) {
    const double tiny = 1e-300;
    cplx b = z + 1.0 - a;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < cfg.max_iter; ++i) {
        const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const cplx del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= cfg.eps) return h;
    }
    throw AccuracyError("incomplete gamma continued fraction did not converge");
}

// E1(z) = Gamma(0, z), principal branch.
inline cplx expint_e1(cplx z, const IncGammaConfig& cfg) {
    if (std::abs(z) > std::max(cfg.crossover_min, 1.0) && std::abs(std::arg(z)) < 3.0)
        return std::exp(-z) * upper_cf(0.0, z, cfg);
    cplx sum = 0.0;
    cplx term = 1.0;
    for (int k = 1; k < cfg.max_iter; ++k) {
        term *= -z / static_cast<double>(k);
        const cplx t = term / static_cast<double>(k);
        sum += t;
        if (std::abs(t) <= cfg.eps * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(z) - sum;
}

}  // namespace detail

/// Upper Gamma(a,z) or lower gamma(a,z), principal branch in z.
/// Series for |z| <= max(crossover_min, |a|), continued fraction beyond
/// (when Re z > 0 or the fraction converges), with Gamma(a,z) + gamma(a,z) = Gamma(a).
inline GammaResult incomplete_gamma(cplx a, cplx z, GammaKind kind, const IncGammaConfig& cfg = {}) {
    const bool a_pole = detail::is_nonpositive_integer(a);
    if (kind == GammaKind::lower && a_pole) throw DomainError("lower incomplete gamma pole in a");
    if (z == 0.0) {
        if (kind == GammaKind::lower) return {0.0, 0.0};
        if (a.real() <= 0.0) throw DomainError("Gamma(a, 0) diverges for Re a <= 0");
        return GammaResult::from_log(log_gamma(a));
    }
    const cplx lpref = a * std::log(z) - z;  // log(z^a e^-z)
    const double cross = std::max(cfg.crossover_min, std::abs(a));
    const bool use_cf = std::abs(z) > cross;

    if (a_pole) {
        // upper kind only: recur down from E1
        const int m = static_cast<int>(-a.real());
        cplx g = detail::expint_e1(z, cfg);
        for (int k = 0; k < m; ++k) {
            const double ak = -static_cast<double>(k) - 1.0;  // Gamma(ak,z) = (Gamma(ak+1,z) - z^ak e^-z)/ak
            g = (g - std::exp(ak * std::log(z) - z)) / ak;
        }
        return GammaResult::from_log(std::log(g));
    }

    const cplx lga = log_gamma(a);
    if (use_cf) {
        cplx F;
        bool ok = true;
        try {
            F = detail::upper_cf(a, z, cfg);
        } catch (const AccuracyError&) {
            ok = false;
        }
        if (ok) {
            const cplx lup = lpref + std::log(F);
            if (kind == GammaKind::upper) return GammaResult::from_log(lup);
            const double s = std::max(lga.real(), lup.real());
            const cplx v = std::exp(lga - s) - std::exp(lup - s);
            return {v, s};
        }
    }
    const cplx S = detail::lower_series(a, z, cfg);
    const cplx llow = lpref + std::log(S);
    if (kind == GammaKind::lower) return GammaResult::from_log(llow);
    const double s = std::max(lga.real(), llow.real());
    const cplx v = std::exp(lga - s) - std::exp(llow - s);
    return {v, s};
}

/// sum_k y^k / Gamma(a+k+1) = y^-a e^y gamma(a,y) / Gamma(a); entire in y.
inline cplx lower_gamma_entire(cplx a, cplx y) {
    if (detail::is_nonpositive_integer(a + 1.0) || detail::is_nonpositive_integer(a)) {
        // terms with a+k+1 <= 0 vanish; the rest sum to y^-a e^y
        const int k0 = static_cast<int>(-a.real());
        return std::pow(y, k0) * std::exp(y);
    }
    if (y == 0.0) return std::exp(-log_gamma(a + 1.0));
    const GammaResult g = incomplete_gamma(a, y, GammaKind::lower);
    // the principal-branch y^a inside gamma(a,y) cancels against y^-a
    return std::exp(g.log() - a * std::log(y) + y - log_gamma(a));
}

}  // namespace tuop
