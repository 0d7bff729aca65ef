#pragma once

// Closed-form large-n predictions: the monic polynomial in its four regions, the
// contour integral over Gamma_t in three regimes, the moment asymptotics and the
// CLT centering.

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "tuop/errors.hpp"
#include "tuop/geometry.hpp"
#include "tuop/model.hpp"
#include "tuop/quadrature.hpp"
#include "tuop/specfun.hpp"

namespace tuop {

enum class ErrorOrder { inverse_n, super_polynomial };

/// Which printed form to evaluate. `corrected` is the form that matches the exact
/// solver; `printed` reproduces the formula exactly as typeset.
enum class FormulaVariant { corrected, printed };

struct AsymptoticPrediction {
    cplx log_value{0.0, 0.0};  // log|value| + i arg(value)
    std::string tag;
    ErrorOrder order = ErrorOrder::inverse_n;
    bool pole_zero = false;  // 1/Gamma(gamma/2) = 0 was used

    cplx value() const {
        if (std::isinf(log_value.real()) && log_value.real() < 0) return 0.0;
        return std::exp(log_value);
    }
};

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(e^a + e^b) for complex logs.
inline cplx log_add(cplx a, cplx b) {
    if (std::isinf(a.real()) && a.real() < 0) return b;
    if (std::isinf(b.real()) && b.real() < 0) return a;
    if (b.real() > a.real()) std::swap(a, b);
    return a + std::log(1.0 + std::exp(b - a));
}

inline bool gamma_pole(cplx s) { return is_nonpositive_integer(s); }

// log((1-x^2)/(1-x^2 z))^(alpha+gamma/2)
inline cplx log_edge_factor(cplx z, const ModelParams& p) {
    return (p.alpha + 0.5 * p.gamma) * (std::log1p(-p.x * p.x) - log_1mx2z(z, p.x));
}

// n phi~(z) = n log z + (n c + gamma/2) log(1 - x^2 z); the branch of log z is immaterial
// after exponentiation since n is an integer
inline cplx n_phi_tilde(cplx z, const ModelParams& p) {
    return static_cast<double>(p.n) * std::log(z) + (p.n * p.c + 0.5 * p.gamma) * log_1mx2z(z, p.x);
}

}  // namespace detail

/// z^n (z/(z-1))^(gamma/2)
inline AsymptoticPrediction pn_ext(cplx z, const ModelParams& p) {
    AsymptoticPrediction a;
    a.tag = "ExtGamma1";
    a.order = ErrorOrder::super_polynomial;
    a.log_value = static_cast<double>(p.n) * std::log(z) - log_h_gamma(z, p.gamma);
    return a;
}

/// kappa^(gamma/2-1) ((1-x^2)/(1-x^2 z))^(alpha+gamma/2) n^(gamma/2-1) / ((1-z) Gamma(gamma/2))
inline AsymptoticPrediction pn_int(cplx z, const ModelParams& p) {
    AsymptoticPrediction a;
    a.tag = "IntGamma1";
    const cplx g2 = 0.5 * p.gamma;
    if (detail::gamma_pole(g2)) {
        a.pole_zero = true;
        a.log_value = {detail::kNegInf, 0.0};
        return a;
    }
    a.log_value = (g2 - 1.0) * std::log(p.kappa()) + detail::log_edge_factor(z, p) +
                  (g2 - 1.0) * std::log(static_cast<double>(p.n)) - std::log(1.0 - z) - log_gamma(g2);
    return a;
}

/// Disc around 1. corrected: ((1-x^2)/(1-x^2 z))^(alpha+gamma/2) (n kappa)^(gamma/2) sum_k y^k/Gamma(gamma/2+k+1),
/// y = n kappa (z-1). printed: e^y Gamma(gamma/2, y)/Gamma(gamma/2) ((1-x^2)/(1-x^2 z))^(alpha+gamma/2) (z-1)^(-gamma/2).
inline AsymptoticPrediction pn_disc(cplx z, const ModelParams& p, FormulaVariant v = FormulaVariant::corrected) {
    AsymptoticPrediction a;
    a.tag = "Disc1";
    const cplx g2 = 0.5 * p.gamma;
    const double nk = p.n * p.kappa();
    const cplx y = nk * (z - 1.0);
    if (v == FormulaVariant::corrected) {
        a.log_value = detail::log_edge_factor(z, p) + g2 * std::log(nk) + std::log(lower_gamma_entire(g2, y));
        return a;
    }
    if (detail::gamma_pole(g2)) {
        a.pole_zero = true;
        a.log_value = {detail::kNegInf, 0.0};
        return a;
    }
    const GammaResult G = incomplete_gamma(g2, y, GammaKind::upper);
    a.log_value = y + G.log() - log_gamma(g2) + detail::log_edge_factor(z, p) - g2 * std::log(z - 1.0);
    return a;
}

/// Evaluate the formula for the region in `label`; NbhdU is the Ext + Int sum.
inline AsymptoticPrediction pn_asymptotic(cplx z, const ModelParams& p, const RegionLabel& label,
                                          FormulaVariant v = FormulaVariant::corrected) {
    if (!p.strong_regime()) throw DomainError("pn_asymptotic needs the strong regime (z0 > 1)");
    switch (label.region) {
        case Region::ExtGamma1: return pn_ext(z, p);
        case Region::IntGamma1: return pn_int(z, p);
        case Region::Disc1: return pn_disc(z, p, v);
        case Region::NbhdU: {
            const AsymptoticPrediction e = pn_ext(z, p), i = pn_int(z, p);
            AsymptoticPrediction a;
            a.tag = "NbhdU";
            a.pole_zero = i.pole_zero;
            a.log_value = detail::log_add(e.log_value, i.log_value);
            return a;
        }
    }
    throw DomainError("unknown region");
}

enum class IntegralRegime { interior, critical, exterior };

inline const char* to_string(IntegralRegime r) {
    switch (r) {
        case IntegralRegime::interior: return "interior";
        case IntegralRegime::critical: return "critical";
        case IntegralRegime::exterior: return "exterior";
    }
    return "?";
}

/// z = 1 - a / (phi'(1) n)
inline cplx critical_point(const ModelParams& p, cplx a) { return 1.0 - a / (p.kappa() * p.n); }

/// Prediction for (1/2 pi i) oint_{Gamma_t} e^{n phi~(s)} h_{-gamma}(s) ds/(s-z).
/// For the critical regime a = phi'(1) n (1 - z).
inline AsymptoticPrediction integral_asymptotic(cplx z, const ModelParams& p, IntegralRegime regime,
                                                FormulaVariant v = FormulaVariant::corrected) {
    if (!p.strong_regime()) throw DomainError("integral_asymptotic needs the strong regime");
    const cplx g2 = 0.5 * p.gamma;
    const double n = p.n;
    const double k = p.kappa();
    const cplx log_e1 = detail::n_phi_tilde(1.0, p);
    AsymptoticPrediction a;
    a.tag = to_string(regime);

    auto second = [&]() -> cplx {
        if (detail::gamma_pole(g2)) {
            a.pole_zero = true;
            return {detail::kNegInf, 0.0};
        }
        if (v == FormulaVariant::corrected)
            return log_e1 + (g2 - 1.0) * std::log(k) + (g2 - 1.0) * std::log(n) - std::log(1.0 - z) - log_gamma(g2);
        return log_e1 + g2 * std::log(k) + (g2 - 1.0) * std::log(n) - std::log(z - 1.0) - log_gamma(g2);
    };

    switch (regime) {
        case IntegralRegime::exterior:
            a.log_value = second();
            return a;
        case IntegralRegime::interior: {
            // on the cut (0, 1) of h the first term is exponentially small; the upper-side value is used
            const cplx first = -0.5 * p.gamma * std::log(1.0 - 1.0 / z) + detail::n_phi_tilde(z, p);
            a.log_value = detail::log_add(first, second());
            return a;
        }
        case IntegralRegime::critical: {
            const cplx aa = k * n * (1.0 - z);
            if (v == FormulaVariant::corrected) {
                a.log_value = log_e1 + g2 * std::log(n * k) + std::log(lower_gamma_entire(g2, -aa));
                return a;
            }
            if (detail::gamma_pole(g2)) {
                a.pole_zero = true;
                a.log_value = {detail::kNegInf, 0.0};
                return a;
            }
            const GammaResult G = incomplete_gamma(g2, aa, GammaKind::upper);
            a.log_value = cplx(0.0, kPi) * g2 + g2 * std::log(n * k) - g2 * std::log(aa) - aa + G.log() -
                          log_gamma(g2) + log_e1;
            return a;
        }
    }
    throw DomainError("unknown regime");
}

/// Direct trapezoid evaluation of (1/2 pi i) oint_{Gamma_t} e^{n phi~(s)} h_{-gamma}(s) ds/(s-z)
/// over the traced inner component of Gamma_t.
inline cplx integral_direct(cplx z, const ModelParams& p, const LevelCurve& gamma_t) {
    auto f = [&](cplx s) { return std::exp(detail::n_phi_tilde(s, p) - log_h_gamma(s, p.gamma)) / (s - z); };
    return contour_integral(f, gamma_t.grid()) / cplx(0.0, 2.0 * kPi);
}

/// kappa_1 = n log mu + alpha log((1-mu)/(1-x^2))
inline double kappa1(const ModelParams& p) {
    return p.n * std::log(p.mu) + p.alpha * std::log((1.0 - p.mu) / (1.0 - p.x * p.x));
}

/// log of n^{g^2/8} mu^{g n/2} ((1-mu)/(1-x^2))^{alpha g/2} (2 pi)^{g/4} / G(1+g/2) (sqrt(1-mu)/(1-x^2))^{g^2/4}
inline cplx rgamma_asymptotic_c(const ModelParams& p) {
    if (p.n < 1) throw DomainError("rgamma_asymptotic needs n >= 1");
    const cplx g = p.gamma;
    if (detail::is_nonpositive_integer(1.0 + 0.5 * g)) throw DomainError("G(1+gamma/2) pole");
    const double n = p.n, mu = p.mu, x2 = p.x * p.x;
    return g * g / 8.0 * std::log(n) + g * n / 2.0 * std::log(mu) +
           p.alpha * g / 2.0 * std::log((1.0 - mu) / (1.0 - x2)) + g / 4.0 * std::log(2.0 * kPi) -
           log_barnes_g(1.0 + 0.5 * g) + g * g / 4.0 * std::log(std::sqrt(1.0 - mu) / (1.0 - x2));
}

inline double rgamma_asymptotic(const ModelParams& p) {
    if (p.x * p.x >= p.mu) throw DomainError("rgamma_asymptotic needs x < sqrt(mu)");
    return rgamma_asymptotic_c(p).real();
}

/// (logdet - kappa_1/2) / (sqrt(log n)/2)
inline double clt_standardize(double logdet, const ModelParams& p) {
    if (p.n < 2) throw DomainError("clt_standardize needs n >= 2");
    return (logdet - 0.5 * kappa1(p)) / (0.5 * std::sqrt(std::log(static_cast<double>(p.n))));
}

/// Limit of E[standardized] implied by the moment asymptotics: (1/4) / (sqrt(log n)/2).
inline double clt_mean_offset(int n) { return 0.25 / (0.5 * std::sqrt(std::log(static_cast<double>(n)))); }

}  // namespace tuop
