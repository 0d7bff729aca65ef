#pragma once

// The twelve acceptance criteria as library calls. Each returns named checks with
// their bounds; a criterion passes when every check passes.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tuop/asymptotics.hpp"
#include "tuop/ensemble.hpp"
#include "tuop/geometry.hpp"
#include "tuop/orthopoly.hpp"
#include "tuop/painleve.hpp"

namespace tuop {

struct Check {
    std::string name;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> metrics;  // reported, not gated
    std::string error;                                    // set when the run threw

    bool pass() const {
        if (!error.empty()) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }

    void check(const std::string& name, double value, double lo, double hi) {
        checks.push_back({name, value, lo, hi, std::isfinite(value) && value >= lo && value <= hi});
    }
    void check_true(const std::string& name, bool ok) { check(name, ok ? 1.0 : 0.0, 1.0, 1.0); }
    void metric(const std::string& name, double v) { metrics.emplace_back(name, v); }
};

struct VerifyConfig {
    std::uint64_t seed = 20240613;
    double sample_scale = 1.0;  // multiplies every Monte Carlo sample count
};

inline nlohmann::json to_json(const CriterionResult& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["title"] = r.title;
    j["pass"] = r.pass();
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : r.checks)
        cs.push_back({{"name", c.name}, {"value", c.value}, {"lo", c.lo}, {"hi", c.hi}, {"pass", c.pass}});
    j["checks"] = cs;
    nlohmann::json ms = nlohmann::json::object();
    for (const auto& [k, v] : r.metrics) ms[k] = v;
    j["metrics"] = ms;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

namespace verify_detail {

inline std::size_t scaled(std::size_t s, const VerifyConfig& c) {
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(static_cast<double>(s) * c.sample_scale)));
}

inline std::string tag(const char* fmt, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, a);
    return buf;
}

inline std::string tag2(const char* fmt, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}

inline std::string tag3(const char* fmt, double a, double b, double c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    return buf;
}

inline double rel(cplx a, cplx b) { return std::abs(a / b - 1.0); }

}  // namespace verify_detail

/// 1. planar Gram chi vs contour chi; chi_hat/chi vs the Gamma ratio.
inline CriterionResult criterion_1(const VerifyConfig&) {
    using namespace verify_detail;
    CriterionResult r;
    r.id = 1;
    r.title = "planar and contour norming constants agree";
    double worst_chi = 0.0, worst_ratio = 0.0;
    for (int alpha : {1, 3})
        for (double g : {-1.0, 1.0, 2.5})
            for (int n = 0; n <= 8; ++n) {
                const ModelParams p = ModelParams::make(n, n + alpha, g, 0.5);
                const MomentTable mt = moments(p, n + 1);
                const PolyPair pp = monic_pair(p, n, mt);
                const PlanarChi pc = planar_chi(p, n);
                worst_chi = std::max(worst_chi, std::abs(pc.chi / pp.chi - 1.0));
                const double cn = std::exp(log_norm_ratio(p, n).real());
                worst_ratio = std::max(worst_ratio, std::abs(pp.chi_hat / pp.chi / cn - 1.0));
            }
    r.check("max |chi_planar/chi_contour - 1|", worst_chi, 0.0, 1e-6);
    r.check("max |(chi_hat/chi)/Gamma ratio - 1|", worst_ratio, 0.0, 1e-8);
    return r;
}

/// 2. gamma = 0 exactness.
inline CriterionResult criterion_2(const VerifyConfig& cfg) {
    CriterionResult r;
    r.id = 2;
    r.title = "gamma = 0 exactness";
    const ModelParams p = ModelParams::make(20, 40, 0.0, 0.5);
    const MomentTable mt = moments(p, 21);
    const ToeplitzChain tc = toeplitz_chain(mt, 20);
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) worst = std::max(worst, std::abs(std::expm1(tc.log_abs(k) - k * std::log(kPi))));
    r.check("max_k<=20 |T_k/pi^k - 1|", worst, 0.0, 1e-10);
    r.check("|rgamma_exact|", std::abs(rgamma_exact(ModelParams::make(12, 24, 0.0, 0.3))), 0.0, 1e-10);
    const McEstimate mc = mc_rgamma(ModelParams::make(8, 16, 0.0, 0.3), verify_detail::scaled(1000, cfg), cfg.seed);
    r.check("mc mean", mc.mean, 1.0, 1.0);
    r.check("mc standard error", mc.standard_error, 0.0, 0.0);
    return r;
}

/// 3. x = 0 closed forms.
inline CriterionResult criterion_3(const VerifyConfig&) {
    CriterionResult r;
    r.id = 3;
    r.title = "x = 0 closed forms";
    double worst_coef = 0.0, worst_r = 0.0;
    for (int alpha : {1, 4})
        for (double g : {-1.0, 1.0, 2.5})
            for (int n = 1; n <= 10; ++n) {
                const ModelParams p = ModelParams::make(n, n + alpha, g, 0.0);
                const PolyPair pp = monic_pair(p, n, moments(p, n + 1));
                for (int i = 0; i < n; ++i) worst_coef = std::max(worst_coef, std::abs(pp.P[i]));
                worst_r = std::max(worst_r, std::abs(std::expm1(rgamma_exact(p) - rgamma_zero(p))));
            }
    r.check("max non-leading |coef| of P_n", worst_coef, 0.0, 1e-10);
    r.check("max |R_exact/R_closed - 1|, n<=10", worst_r, 0.0, 1e-8);
    return r;
}

/// 4. moment asymptotics ratio and its 1/n decay.
inline CriterionResult criterion_4(const VerifyConfig&) {
    CriterionResult r;
    r.id = 4;
    r.title = "moment asymptotics converge at rate 1/n";
    double dev[3];
    const int ns[3] = {10, 20, 40};
    for (int i = 0; i < 3; ++i) {
        const ModelParams p = ModelParams::make(ns[i], 2 * ns[i], 1.0, 0.3);
        const double ratio = std::exp(rgamma_exact(p) - rgamma_asymptotic(p));
        dev[i] = ratio - 1.0;
        r.check(verify_detail::tag("ratio n=%g", ns[i]), ratio, 1.0 - 5.0 / ns[i], 1.0 + 5.0 / ns[i]);
    }
    r.check("|ratio-1| decay factor n=20->40", std::abs(dev[1]) / std::abs(dev[2]), 1.5, 3.0);
    return r;
}

/// 5. polynomial asymptotics in the four regions at n = 40.
inline CriterionResult criterion_5(const VerifyConfig&) {
    using namespace verify_detail;
    CriterionResult r;
    r.id = 5;
    r.title = "polynomial asymptotics by region";
    const ModelParams p = ModelParams::make(40, 80, 1.0, 0.3);
    const PolyPair pp = monic_pair(p, 40, moments(p, 41));
    auto exact = [&](cplx z) { return poly_eval(pp.P, z); };
    const LevelCurve g1 = trace_gamma(p, 1.0, 720, Component::inner);
    const double tol = 10.0 / p.n;
    const double uw = 5.0 / p.n;
    const double delta = 4.0;
    double e_int = 0.0, e_ext = 0.0, e_disc = 0.0, e_disc_printed = 0.0;
    bool labels_ok = true;
    for (int k = 0; k < 32; ++k) {
        const double th = 2.0 * kPi * (k + 0.5) / 32.0;
        const cplx zi = std::polar(0.45, th), ze = std::polar(1.6, th);
        labels_ok &= classify(zi, p, g1, uw, delta).region == Region::IntGamma1;
        labels_ok &= classify(ze, p, g1, uw, delta).region == Region::ExtGamma1;
        e_int = std::max(e_int, rel(pn_int(zi, p).value(), exact(zi)));
        e_ext = std::max(e_ext, rel(pn_ext(ze, p).value(), exact(ze)));
        const double phd = 0.05 + (kPi - 0.1) * k / 31.0;
        const cplx zd = critical_point(p, std::polar(3.0, phd));
        labels_ok &= classify(zd, p, g1, uw, delta).region == Region::Disc1;
        e_disc = std::max(e_disc, rel(pn_disc(zd, p).value(), exact(zd)));
        e_disc_printed = std::max(e_disc_printed, rel(pn_disc(zd, p, FormulaVariant::printed).value(), exact(zd)));
    }
    r.check_true("sample points carry the intended region labels", labels_ok);
    r.check("Int max rel err", e_int, 0.0, tol);
    r.check("Ext max rel err", e_ext, 0.0, tol);
    r.check("Disc1 max rel err", e_disc, 0.0, tol);
    r.metric("Disc1 printed-form max rel err", e_disc_printed);
    // ring: points of Gamma_1 itself, where both terms are of the same size
    const LevelCurve ring = trace_gamma(p, 1.0, 64, Component::inner);
    int worse = 0;
    double worst_gap = 0.0;
    for (const cplx z : ring.points) {
        if (std::abs(z - 1.0) < delta / p.n) continue;
        const cplx ex = exact(z);
        const double es = rel(pn_asymptotic(z, p, RegionLabel{Region::NbhdU}).value(), ex);
        const double m = std::min(rel(pn_ext(z, p).value(), ex), rel(pn_int(z, p).value(), ex));
        if (es > m) ++worse;
        worst_gap = std::max(worst_gap, es - m);
    }
    r.check("ring points where the sum is worse than the best single term", worse, 0, 0);
    r.metric("ring max (sum err - best single err)", worst_gap);
    return r;
}

/// 6. contour-integral asymptotics vs direct quadrature over Gamma_t, n = 40 and 80.
inline CriterionResult criterion_6(const VerifyConfig&) {
    using namespace verify_detail;
    CriterionResult r;
    r.id = 6;
    r.title = "contour integral asymptotics in three regimes";
    const double t = 1.1;
    const cplx interior[] = {0.2, {0.5, 0.3}, -0.3, {0.0, 0.1}};
    const cplx exterior[] = {2.0, {0.0, 1.5}, -1.2, {1.3, 0.8}};
    double err[2][3] = {};
    double printed[3] = {};
    const int ns[2] = {40, 80};
    for (int i = 0; i < 2; ++i) {
        const ModelParams p = ModelParams::make(ns[i], 2 * ns[i], 1.0, 0.3);
        const LevelCurve gt = trace_gamma(p, t, 2048, Component::inner);
        for (cplx z : interior) {
            const cplx d = integral_direct(z, p, gt);
            err[i][0] = std::max(err[i][0], rel(integral_asymptotic(z, p, IntegralRegime::interior).value(), d));
            if (i == 0)
                printed[0] = std::max(printed[0], rel(integral_asymptotic(z, p, IntegralRegime::interior,
                                                                          FormulaVariant::printed).value(), d));
        }
        for (int k = 0; k < 8; ++k) {
            const cplx z = critical_point(p, std::polar(3.0, 0.05 + (kPi - 0.1) * k / 7.0));
            const cplx d = integral_direct(z, p, gt);
            err[i][1] = std::max(err[i][1], rel(integral_asymptotic(z, p, IntegralRegime::critical).value(), d));
            if (i == 0)
                printed[1] = std::max(printed[1], rel(integral_asymptotic(z, p, IntegralRegime::critical,
                                                                          FormulaVariant::printed).value(), d));
        }
        for (cplx z : exterior) {
            const cplx d = integral_direct(z, p, gt);
            err[i][2] = std::max(err[i][2], rel(integral_asymptotic(z, p, IntegralRegime::exterior).value(), d));
            if (i == 0)
                printed[2] = std::max(printed[2], rel(integral_asymptotic(z, p, IntegralRegime::exterior,
                                                                          FormulaVariant::printed).value(), d));
        }
    }
    const char* names[3] = {"interior", "critical", "exterior"};
    for (int j = 0; j < 3; ++j) {
        r.check(std::string(names[j]) + " max rel err n=40", err[0][j], 0.0, 10.0 / 40);
        r.check(std::string(names[j]) + " error shrinks n=40->80 (err80/err40)", err[1][j] / err[0][j], 0.0,
                1.0 - 1e-12);
        r.metric(std::string(names[j]) + " max rel err n=80", err[1][j]);
        r.metric(std::string(names[j]) + " printed-form max rel err n=40", printed[j]);
    }
    return r;
}

/// 7. differential identity vs centered finite difference of log R.
inline CriterionResult criterion_7(const VerifyConfig&) {
    using namespace verify_detail;
    CriterionResult r;
    r.id = 7;
    r.title = "differential identity";
    const double h = 1e-4;
    for (double x : {0.2, 0.4}) {
        const ModelParams p = ModelParams::make(12, 24, 1.0, x);
        const double fd = (rgamma_exact(ModelParams::make(12, 24, 1.0, x + h)) -
                           rgamma_exact(ModelParams::make(12, 24, 1.0, x - h))) / (2.0 * h);
        const double main = diffid_rhs(p, DiffidPrefactor::main_text).value;
        const double app = diffid_rhs(p, DiffidPrefactor::appendix).value;
        r.check(tag("main-text rel err x=%g", x), std::abs(main / fd - 1.0), 0.0, 1e-4);
        r.metric(tag("appendix-variant rel err x=%g", x), std::abs(app / fd - 1.0));
        r.metric(tag("finite difference x=%g", x), fd);
    }
    return r;
}

/// 8. Monte Carlo mean vs exact moment.
inline CriterionResult criterion_8(const VerifyConfig& cfg) {
    CriterionResult r;
    r.id = 8;
    r.title = "Monte Carlo agrees with the exact moment";
    const ModelParams p = ModelParams::make(8, 16, 1.0, 0.3);
    const double ex = std::exp(rgamma_exact(p));
    const McEstimate mc = mc_rgamma(p, verify_detail::scaled(100000, cfg), cfg.seed);
    r.metric("exact", ex);
    r.metric("mc mean", mc.mean);
    r.metric("mc standard error", mc.standard_error);
    r.metric("samples", static_cast<double>(mc.samples));
    r.check("|mean - exact| / SE", std::abs(mc.mean - ex) / mc.standard_error, 0.0, 3.0);
    return r;
}

/// 9. CLT at n = 200.
inline CriterionResult criterion_9(const VerifyConfig& cfg) {
    CriterionResult r;
    r.id = 9;
    r.title = "central limit theorem at n = 200";
    const std::size_t S = verify_detail::scaled(10000, cfg);
    const CltSummary c200 = clt_empirical(ModelParams::make(200, 400, 0.0, 0.3), S, cfg.seed);
    const CltSummary c50 = clt_empirical(ModelParams::make(50, 100, 0.0, 0.3), S, cfg.seed + 1);
    r.check("standardized mean", c200.mean, -0.05, 0.05);
    r.check("standardized variance", c200.variance, 0.8, 1.2);
    r.check("KS(n=200) - KS(n=50)", c200.ks_distance - c50.ks_distance, -HUGE_VAL, -1e-300);
    r.metric("KS n=200", c200.ks_distance);
    r.metric("KS n=50", c50.ks_distance);
    r.metric("mean n=50", c50.mean);
    r.metric("variance n=50", c50.variance);
    r.metric("predicted mean offset n=200", clt_mean_offset(200));
    r.metric("samples", static_cast<double>(S));
    return r;
}

/// 10. level curves and zeros.
inline CriterionResult criterion_10(const VerifyConfig&) {
    CriterionResult r;
    r.id = 10;
    r.title = "level curves and zero locations";
    const ModelParams p37 = ModelParams::make(37, 74, 0.5, 7.0 / 12.0);
    const LevelCurve inner = trace_gamma_refined(p37, 1.0, Component::inner);
    const LevelCurve outer = trace_gamma_refined(p37, 1.0, Component::outer);
    // the closed form |z| |1-x^2 z|^c = (1-x^2)^c, in log form
    double res = 0.0;
    for (const cplx z : inner.points)
        res = std::max(res, std::abs(std::log(std::abs(z)) + p37.c * std::log(std::abs(1.0 - p37.x * p37.x * z)) -
                                     p37.c * std::log1p(-p37.x * p37.x)));
    r.check("Gamma_1 residual", res, 0.0, 1e-10);
    r.check("inner real-axis crossings", real_axis_crossings(inner), 2, 2);
    r.check("outer real-axis crossings", real_axis_crossings(outer), 2, 2);
    auto maxdist = [&](int n) {
        const ModelParams p = ModelParams::make(n, 2 * n, 0.5, 7.0 / 12.0);
        const PolyPair pp = monic_pair(p, n, moments(p, n + 1));
        double d = 0.0;
        for (const cplx z : poly_zeros(pp.P)) d = std::max(d, distance_to_curve(inner, z));
        return d;
    };
    const double d37 = maxdist(37), d20 = maxdist(20);
    r.check("max zero distance to Gamma_1, n=37", d37, 0.0, 0.15);
    r.check("max distance n=37 minus n=20", d37 - d20, -HUGE_VAL, -1e-300);
    r.metric("max zero distance n=20", d20);
    return r;
}

/// 11. sigma-Painleve V and the weak-regime formula.
inline CriterionResult criterion_11(const VerifyConfig&) {
    using namespace verify_detail;
    CriterionResult r;
    r.id = 11;
    r.title = "Painleve V weak-regime asymptotics";
    for (int alpha : {1, 2}) {
        const double g = 1.0;
        r.check(tag("exponent identity gap alpha=%g", alpha), exponent_identity_gap(alpha, g), 0.0, 0.0);
        for (double v : {2.0, 5.0}) {
            const PvPrediction pv20 = rgamma_pv(alpha, g, v, 20);
            const PvPrediction pv40 = rgamma_pv(alpha, g, v, 40);
            r.check(tag2("ODE residual alpha=%g v=%g", alpha, v), pv40.max_residual, 0.0, 1e-8);
            const double e20 = dn_exact_weak(alpha, g, v, 20).log_value;
            const double e40 = dn_exact_weak(alpha, g, v, 40).log_value;
            const double gap20 = std::abs(std::exp(pv20.log_value - e20) - 1.0);
            const double gap40 = std::abs(std::exp(pv40.log_value - e40) - 1.0);
            r.check(tag2("|ratio-1| n=40 alpha=%g v=%g", alpha, v), gap40, 0.0, 0.10);
            r.check(tag2("gap40 - gap20 alpha=%g v=%g", alpha, v), gap40 - gap20, -HUGE_VAL, -1e-300);
            const PvPrediction printed = rgamma_pv(alpha, g, v, 40, PvForm::printed);
            r.metric(tag2("printed-form ratio n=40 alpha=%g v=%g", alpha, v), std::exp(printed.log_value - e40));
            r.metric(tag2("corrected sign without constant: ratio n=40 alpha=%g v=%g", alpha, v),
                     std::exp(pv40.log_value - weak_constant(alpha, g) - e40));
        }
    }
    return r;
}

using CriterionFn = std::function<CriterionResult(const VerifyConfig&)>;

inline CriterionResult criterion_12(const VerifyConfig& cfg);

inline CriterionFn criterion_fn(int id) {
    switch (id) {
        case 1: return criterion_1;
        case 2: return criterion_2;
        case 3: return criterion_3;
        case 4: return criterion_4;
        case 5: return criterion_5;
        case 6: return criterion_6;
        case 7: return criterion_7;
        case 8: return criterion_8;
        case 9: return criterion_9;
        case 10: return criterion_10;
        case 11: return criterion_11;
        case 12: return criterion_12;
    }
    throw DomainError("criterion id must be 1..12");
}

/// Runs one criterion; exceptions become a failed result carrying the message.
inline CriterionResult run_criterion(int id, const VerifyConfig& cfg) {
    try {
        return criterion_fn(id)(cfg);
    } catch (const std::exception& e) {
        CriterionResult r;
        r.id = id;
        r.title = "criterion " + std::to_string(id);
        r.error = e.what();
        return r;
    }
}

/// 12. two runs of the seeded criteria serialize to identical bytes, and the Monte Carlo
/// estimate does not depend on the thread count.
inline CriterionResult criterion_12(const VerifyConfig& cfg) {
    CriterionResult r;
    r.id = 12;
    r.title = "determinism";
    VerifyConfig small = cfg;
    small.sample_scale = 0.1 * cfg.sample_scale;
    auto body = [&] {
        nlohmann::json j = nlohmann::json::array();
        for (int id : {2, 3, 8}) j.push_back(to_json(run_criterion(id, small)));
        return j.dump();
    };
    const std::string a = body(), b = body();
    r.check_true("byte-identical bodies", a == b);
    r.metric("body bytes", static_cast<double>(a.size()));
    const ModelParams p = ModelParams::make(8, 16, 1.0, 0.3);
    const std::size_t S = verify_detail::scaled(5000, cfg);
    std::vector<double> serial(S), threaded(S);
    for (std::size_t i = 0; i < S; ++i) serial[i] = sample_logdet(p.n, p.N, p.x, cfg.seed, i);
    {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < 3; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < S; i += 3) threaded[i] = sample_logdet(p.n, p.N, p.x, cfg.seed, i);
            });
        for (auto& th : pool) th.join();
    }
    r.check_true("serial and 3-thread draws identical", serial == threaded);
    return r;
}

}  // namespace tuop
