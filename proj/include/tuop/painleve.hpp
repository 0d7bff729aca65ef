#pragma once

// sigma-form Painleve V with decay at +infinity, the integral of sigma/u, and the
// weak-regime (x^2 = 1 - v/n) prediction for log R_gamma.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "tuop/errors.hpp"
#include "tuop/model.hpp"
#include "tuop/orthopoly.hpp"
#include "tuop/specfun.hpp"

namespace tuop {

class PoleError : public AccuracyError {
public:
    using AccuracyError::AccuracyError;
};

struct PVParams {
    double a = 0.0;  // (alpha + gamma)/2
    double b = 0.0;  // alpha/2

    static PVParams make(double alpha, double gamma) {
        PVParams p{0.5 * (alpha + gamma), 0.5 * alpha};
        if (detail::is_nonpositive_integer(cplx(p.a + p.b)) || detail::is_nonpositive_integer(cplx(p.a - p.b)))
            throw DomainError("a +- b must avoid 0, -1, -2, ...");
        return p;
    }
    double D() const { return a * a - b * b; }
};

/// Returns a^2 - b^2 - (gamma/2)(gamma/2 + alpha); zero up to roundoff.
inline double exponent_identity_gap(double alpha, double gamma) {
    const PVParams p{0.5 * (alpha + gamma), 0.5 * alpha};
    return p.D() - 0.5 * gamma * (0.5 * gamma + alpha);
}

/// Sign of the decaying boundary data at +infinity. `corrected` (+) is the one that reaches
/// sigma(0+) = a^2 - b^2; `printed` keeps the minus sign as typeset.
enum class PvForm { corrected, printed };

struct PvConfig {
    double u_max = 60.0;
    double rtol = 1e-13;
    double pole_threshold = 1e6;
    int grid_points = 2001;
    int series_terms = 30;
    PvForm form = PvForm::corrected;
};

struct SigmaSolution {
    PVParams pv;
    double v = 0.0;
    double u_max = 0.0;
    std::vector<double> u;  // descending, u[0] = u_max, u.back() = v
    std::vector<double> sigma, sigma_p, sigma_pp;
    std::vector<double> residual;  // |(u sigma'')^2 - RHS|
    std::vector<double> integral;  // int_{u}^{u_max} sigma/s ds
    double max_residual = 0.0;
    double sigma_at_umax_series = 0.0;
    double sign = 1.0;
};

namespace detail {

inline double pv_E(double u, double s, double sp, double a) { return s - u * sp + 2.0 * sp * sp + 2.0 * a * sp; }

inline double pv_rhs(double u, double s, double sp, const PVParams& p) {
    const double E = pv_E(u, s, sp, p.a);
    return E * E - 4.0 * sp * sp * (sp + p.a + p.b) * (sp + p.a - p.b);
}

// d(RHS)/d(sigma')
inline double pv_rhs_dsp(double u, double s, double sp, const PVParams& p) {
    const double a = p.a, b = p.b;
    const double E = pv_E(u, s, sp, a);
    return 2.0 * E * (-u + 4.0 * sp + 2.0 * a) -
           (8.0 * sp * (sp + a + b) * (sp + a - b) + 4.0 * sp * sp * (2.0 * sp + 2.0 * a));
}

/// Large-u series sigma = sign e^{-u} sum_k c_k u^{2a-1-k} / (Gamma(a-b) Gamma(a+b)) and two derivatives.
inline std::array<double, 3> pv_series(const PVParams& pv, double u, int terms, double sign) {
    const double a = pv.a, D = pv.D();
    const double p = 2.0 * a - 1.0;
    auto A2 = [&](double q) { return -2.0 * q - 3.0 * q * (q - 1.0) - (2.0 * a - 4.0 * a * a) + 4.0 * a * q - 4.0 * D; };
    auto A3 = [&](double q) { return q * (q - 1.0) + q * (q - 1.0) * (q - 2.0) - 4.0 * a * a * q + 4.0 * D * q; };
    std::vector<double> c{1.0};
    for (int k = 1; k < terms; ++k) {
        double ck = c[k - 1] * A2(p - k + 1);
        if (k >= 2) ck += c[k - 2] * A3(p - k + 2);
        c.push_back(ck / (2.0 * k));
    }
    double g = 0.0, g1 = 0.0, g2 = 0.0;
    for (int k = 0; k < terms; ++k) {
        const double q = p - k;
        const double t = c[k] * std::pow(u, q);
        g += t;
        g1 += t * q / u;
        g2 += t * q * (q - 1.0) / (u * u);
    }
    const double pre = sign * std::exp(-u) / (std::tgamma(pv.a - pv.b) * std::tgamma(pv.a + pv.b));
    return {pre * g, pre * (g1 - g), pre * (g2 - 2.0 * g1 + g)};
}

}  // namespace detail

/// Integrates backward from u_max to v. The state is (sigma, sigma', sigma'', I) with
/// 2u(sigma'' + u sigma''') = d(RHS)/d(sigma') (the u-derivative of the equation divided by sigma'')
/// and I' = sigma/u.
inline SigmaSolution sigma_solve(const PVParams& pv, double v, const PvConfig& cfg = {}) {
    if (!(v > 0.0)) throw DomainError("sigma_solve needs v > 0");
    if (cfg.u_max < std::max(40.0, v + 30.0)) throw DomainError("u_max must be >= max(40, v + 30)");
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 4>;
    SigmaSolution sol;
    sol.pv = pv;
    sol.v = v;
    sol.u_max = cfg.u_max;
    sol.sign = cfg.form == PvForm::corrected ? 1.0 : -1.0;
    const auto s0 = detail::pv_series(pv, cfg.u_max, cfg.series_terms, sol.sign);
    sol.sigma_at_umax_series = s0[0];

    // t = u_max - u runs forward
    auto sys = [&](const State& y, State& dy, double t) {
        const double u = cfg.u_max - t;
        const double s3 = (detail::pv_rhs_dsp(u, y[0], y[1], pv) / (2.0 * u) - y[2]) / u;
        dy[0] = -y[1];
        dy[1] = -y[2];
        dy[2] = -s3;
        dy[3] = -y[0] / u;
    };
    State y{s0[0], s0[1], s0[2], 0.0};
    const int M = cfg.grid_points;
    std::vector<double> ts(M);
    for (int i = 0; i < M; ++i) ts[i] = (cfg.u_max - v) * static_cast<double>(i) / (M - 1);
    auto stepper = ode::make_controlled(1e-300, cfg.rtol, ode::runge_kutta_fehlberg78<State>());
    auto obs = [&](const State& st, double t) {
        if (!std::isfinite(st[0]) || std::abs(st[0]) > cfg.pole_threshold)
            throw PoleError("sigma_solve: pole encountered near u = " + std::to_string(cfg.u_max - t));
        const double u = cfg.u_max - t;
        sol.u.push_back(u);
        sol.sigma.push_back(st[0]);
        sol.sigma_p.push_back(st[1]);
        sol.sigma_pp.push_back(st[2]);
        // I(t) accumulates -int sigma/u du along decreasing u, i.e. +int_u^{u_max}
        sol.integral.push_back(-st[3]);
        const double lhs = u * st[2];
        const double r = std::abs(lhs * lhs - detail::pv_rhs(u, st[0], st[1], pv));
        sol.residual.push_back(r);
        sol.max_residual = std::max(sol.max_residual, r);
    };
    ode::integrate_times(stepper, sys, y, ts.begin(), ts.end(), 1e-3, obs);
    return sol;
}

/// int_{u_max}^infinity of the boundary form: sign Gamma(2a-1, u_max) / (Gamma(a-b) Gamma(a+b)).
inline double sigma_tail(const PVParams& pv, double u_max, double sign) {
    const double s = 2.0 * pv.a - 1.0;
    const GammaResult G = incomplete_gamma(cplx(s), cplx(u_max), GammaKind::upper);
    return sign * (G.combined().real()) / (std::tgamma(pv.a - pv.b) * std::tgamma(pv.a + pv.b));
}

/// int_v^infinity sigma(u)/u du
inline double omega_integral(const SigmaSolution& sol) {
    if (sol.u.empty()) throw DomainError("empty solution");
    return sol.integral.back() + sigma_tail(sol.pv, sol.u_max, sol.sign);
}

/// Omega(+infinity) from the solution taken down to a small u = eps:
/// int_eps^inf sigma/u + (a^2-b^2) log eps + (a^2-b^2) eps/(2a).
inline double omega_infinity_numeric(const PVParams& pv, double eps = 1e-5, const PvConfig& cfg = {}) {
    const SigmaSolution sol = sigma_solve(pv, eps, cfg);
    return omega_integral(sol) + pv.D() * std::log(eps) + pv.D() * eps / (2.0 * pv.a);
}

/// -log[G(1+a+b) G(1+a-b) / G(1+2a)]
inline double omega_infinity_closed(const PVParams& pv) {
    return -(log_barnes_g(1.0 + pv.a + pv.b) + log_barnes_g(1.0 + pv.a - pv.b) - log_barnes_g(1.0 + 2.0 * pv.a));
}

/// log G(gamma/2+alpha+1) - log G(1+gamma/2) - log G(alpha+1)
inline double weak_constant(double alpha, double gamma) {
    return log_barnes_g(0.5 * gamma + alpha + 1.0) - log_barnes_g(1.0 + 0.5 * gamma) - log_barnes_g(alpha + 1.0);
}

struct PvPrediction {
    double log_value = 0.0;
    double integral = 0.0;  // int_v^inf sigma/u
    double max_residual = 0.0;
};

/// (gamma^2/4) log n - (gamma/2)(gamma/2+alpha) log v - int_v^inf sigma/u, plus the constant
/// G(gamma/2+alpha+1)/(G(1+gamma/2)G(alpha+1)) in the corrected form.
inline PvPrediction rgamma_pv(int alpha, double gamma, double v, int n, PvForm form = PvForm::corrected,
                              PvConfig cfg = {}) {
    if (alpha < 1 || n < 1) throw DomainError("rgamma_pv needs alpha >= 1 and n >= 1");
    if (!(v > 0.0) || v >= n) throw DomainError("rgamma_pv needs 0 < v < n");
    PvPrediction r;
    if (gamma == 0.0) return r;
    const PVParams pv = PVParams::make(alpha, gamma);
    cfg.form = form;
    cfg.u_max = std::max(cfg.u_max, v + 30.0);
    const SigmaSolution sol = sigma_solve(pv, v, cfg);
    r.integral = omega_integral(sol);
    r.max_residual = sol.max_residual;
    r.log_value = gamma * gamma / 4.0 * std::log(static_cast<double>(n)) -
                  0.5 * gamma * (0.5 * gamma + alpha) * std::log(v) - r.integral;
    if (form == PvForm::corrected) r.log_value += weak_constant(alpha, gamma);
    return r;
}

struct WeakExact {
    double log_value = 0.0;
    double x = 0.0;
    double barnes_prefactor_log = 0.0;  // log G(g/2+n+1)G(a+n+1)/(G(n+1)G(g/2+n+a+1))
    double barnes_power_gap = 0.0;      // prefactor + (alpha gamma / 2) log n; O(1/n)
    bool conditioning_warning = false;
};

/// Exact log R_gamma(x) with N = n + alpha and x = sqrt(1 - v/n).
inline WeakExact dn_exact_weak(int alpha, double gamma, double v, int n, const MomentConfig& mcfg = {}) {
    if (!(v > 0.0) || v >= n) throw DomainError("dn_exact_weak needs 0 < v < n");
    WeakExact w;
    w.x = std::sqrt(1.0 - v / n);
    w.conditioning_warning = n > 40;
    const double g2 = 0.5 * gamma;
    w.barnes_prefactor_log = log_barnes_g(g2 + n + 1.0) + log_barnes_g(alpha + n + 1.0) - log_barnes_g(n + 1.0) -
                             log_barnes_g(g2 + n + alpha + 1.0);
    w.barnes_power_gap = w.barnes_prefactor_log + 0.5 * alpha * gamma * std::log(static_cast<double>(n));
    if (gamma == 0.0) return w;
    const ModelParams p = ModelParams::make(n, n + alpha, gamma, w.x);
    w.log_value = rgamma_exact(p, mcfg);
    return w;
}

}  // namespace tuop
