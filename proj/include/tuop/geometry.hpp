#pragma once

// Level curves Re phi(z) = phi(r), saddle point data and region labels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "tuop/errors.hpp"
#include "tuop/model.hpp"
#include "tuop/quadrature.hpp"

namespace tuop {

enum class Component { inner, outer };

inline const char* to_string(Component c) { return c == Component::inner ? "inner" : "outer"; }

struct LevelCurve {
    double r = 1.0;
    double level = 0.0;       // phi(r) for the chosen coefficient
    double coeff = 0.0;       // c or c + gamma/(2n)
    double x = 0.0;
    Component component = Component::inner;
    cplx anchor = 0.0;
    std::vector<double> theta;
    std::vector<cplx> points;       // counterclockwise around the anchor
    std::vector<cplx> derivatives;  // dz/dtheta
    double residual = 0.0;          // max |Re phi(point) - level|

    ContourGrid grid() const { return {points, derivatives}; }
};

namespace detail {

inline double level_value(const ModelParams& p, double r, double cc) {
    return std::log(r) + cc * std::log1p(-p.x * p.x * r);
}

inline cplx dphi_cc(cplx z, double x, double cc) { return 1.0 / z - cc * x * x / (1.0 - x * x * z); }

}  // namespace detail

/// Trace one Jordan component of Re phi(z) = phi(r). Each angle theta_k = 2 pi k / M
/// around the anchor (0 for inner, x^-2 for outer) is solved radially for the first
/// crossing; dz/dtheta comes from implicit differentiation.
inline LevelCurve trace_gamma(const ModelParams& p, double r, std::size_t npoints, Component comp,
                              PhiVariant variant = PhiVariant::plain) {
    if (npoints < 8) throw DomainError("trace_gamma needs at least 8 points");
    if (!(r > 0.0)) throw DomainError("trace_gamma needs r > 0");
    double cc = p.c;
    if (variant == PhiVariant::tilde) cc += p.gamma.real() / (2.0 * p.n);
    LevelCurve L;
    L.r = r;
    L.coeff = cc;
    L.x = p.x;
    L.component = comp;
    L.theta.resize(npoints);
    L.points.resize(npoints);
    L.derivatives.resize(npoints);
    const double M = static_cast<double>(npoints);

    if (p.x == 0.0) {
        if (comp == Component::outer) throw DomainError("x = 0 has no outer component");
        L.level = std::log(r);
        for (std::size_t k = 0; k < npoints; ++k) {
            const double th = 2.0 * kPi * static_cast<double>(k) / M;
            L.theta[k] = th;
            L.points[k] = std::polar(r, th);
            L.derivatives[k] = cplx(0.0, 1.0) * L.points[k];
        }
        return L;
    }
    const double x = p.x;
    const double u = 1.0 / (x * x);
    if (p.strong_regime() && r > p.z0() * (1.0 + 1e-12)) throw DomainError("trace_gamma needs r <= z0");
    if (r >= u) throw DomainError("trace_gamma needs r < x^-2");
    L.level = detail::level_value(p, r, cc);
    L.anchor = comp == Component::inner ? cplx(0.0) : cplx(u);
    const double start = comp == Component::inner ? r / 64.0 : 1e-3 * (u - std::min(r, u * 0.999)) + 1e-12;

    for (std::size_t k = 0; k < npoints; ++k) {
        const double th = 2.0 * kPi * static_cast<double>(k) / M;
        const cplx e = std::polar(1.0, th);
        auto F = [&](double rho) { return re_phi(L.anchor + rho * e, x, cc) - L.level; };
        double lo = start;
        while (F(lo) >= 0.0) {
            lo *= 0.5;
            if (lo < 1e-300) throw AccuracyError("trace_gamma: bracketing failed near the anchor");
        }
        double hi = lo;
        int guard = 0;
        while (F(hi) < 0.0) {
            lo = hi;
            hi *= 1.02;
            if (++guard > 200000) throw AccuracyError("trace_gamma: bracketing failed");
        }
        std::uintmax_t iters = 200;
        auto tolf = boost::math::tools::eps_tolerance<double>(52);
        const auto br = boost::math::tools::toms748_solve(F, lo, hi, tolf, iters);
        double rho = 0.5 * (br.first + br.second);
        // one Newton polish in rho
        {
            const cplx z = L.anchor + rho * e;
            const double Fr = (detail::dphi_cc(z, x, cc) * e).real();
            if (Fr != 0.0) {
                const double step = F(rho) / Fr;
                if (std::abs(step) < 1e-6 * rho) rho -= step;
            }
        }
        const cplx z = L.anchor + rho * e;
        const cplx d = detail::dphi_cc(z, x, cc);
        const double Fr = (d * e).real();
        const double Ft = (d * cplx(0.0, rho) * e).real();
        const double drho = -Ft / Fr;
        L.theta[k] = th;
        L.points[k] = z;
        L.derivatives[k] = (drho + cplx(0.0, rho)) * e;
        L.residual = std::max(L.residual, std::abs(F(rho)));
    }
    return L;
}

inline double spacing_ratio(const LevelCurve& L) {
    const std::size_t M = L.points.size();
    std::vector<double> d(M);
    for (std::size_t i = 0; i < M; ++i) d[i] = std::abs(L.points[(i + 1) % M] - L.points[i]);
    const double mx = *std::max_element(d.begin(), d.end());
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(M / 2), d.end());
    return mx / d[M / 2];
}

/// Starts at 720 points and doubles (at most twice) while the largest adjacent spacing
/// exceeds twice the median.
inline LevelCurve trace_gamma_refined(const ModelParams& p, double r, Component comp,
                                      PhiVariant variant = PhiVariant::plain) {
    std::size_t M = 720;
    LevelCurve L = trace_gamma(p, r, M, comp, variant);
    for (int k = 0; k < 2 && spacing_ratio(L) > 2.0; ++k) {
        M *= 2;
        L = trace_gamma(p, r, M, comp, variant);
    }
    return L;
}

/// Number of sign changes of Im(z) around the closed polyline (values within tol count as zero).
inline int real_axis_crossings(const LevelCurve& L, double tol = 1e-12) {
    std::vector<int> s;
    for (const cplx& z : L.points) {
        const double t = tol * (1.0 + std::abs(z));
        if (z.imag() > t) s.push_back(1);
        else if (z.imag() < -t) s.push_back(-1);
    }
    if (s.empty()) return 0;
    int changes = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != s[(i + 1) % s.size()]) ++changes;
    return changes;
}

namespace detail {

inline double cross2(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

inline bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
    const double d1 = cross2(b - a, c - a), d2 = cross2(b - a, d - a);
    const double d3 = cross2(d - c, a - c), d4 = cross2(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace detail

/// True when no two non-adjacent polyline segments intersect.
inline bool is_jordan(const LevelCurve& L) {
    const std::size_t M = L.points.size();
    for (std::size_t i = 0; i < M; ++i) {
        const cplx a = L.points[i], b = L.points[(i + 1) % M];
        for (std::size_t j = i + 2; j < M; ++j) {
            if (i == 0 && j == M - 1) continue;
            if (detail::segments_cross(a, b, L.points[j], L.points[(j + 1) % M])) return false;
        }
    }
    return true;
}

/// Winding number of the closed polyline around z.
inline int winding_number(const LevelCurve& L, cplx z) {
    double total = 0.0;
    const std::size_t M = L.points.size();
    for (std::size_t i = 0; i < M; ++i) {
        const cplx a = L.points[i] - z, b = L.points[(i + 1) % M] - z;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

/// Distance from z to the polyline.
inline double distance_to_curve(const LevelCurve& L, cplx z) {
    double best = HUGE_VAL;
    const std::size_t M = L.points.size();
    for (std::size_t i = 0; i < M; ++i) {
        const cplx a = L.points[i], b = L.points[(i + 1) % M];
        const cplx ab = b - a;
        double t = std::norm(ab) > 0.0 ? ((z - a) * std::conj(ab)).real() / std::norm(ab) : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::abs(z - (a + t * ab)));
    }
    return best;
}

enum class Region { ExtGamma1, IntGamma1, NbhdU, Disc1 };

inline const char* to_string(Region r) {
    switch (r) {
        case Region::ExtGamma1: return "ExtGamma1";
        case Region::IntGamma1: return "IntGamma1";
        case Region::NbhdU: return "NbhdU";
        case Region::Disc1: return "Disc1";
    }
    return "?";
}

struct RegionLabel {
    Region region = Region::ExtGamma1;
    double distance_to_gamma1 = 0.0;
    double n_dist_to_1 = 0.0;  // |n (z - 1)|
};

/// Disc1 if |z-1| < delta/n, else NbhdU if |Re phi(z) - phi(1)| < u_width,
/// else inside/outside by the winding number of the traced Gamma_1.
inline RegionLabel classify(cplx z, const ModelParams& p, const LevelCurve& gamma1, double u_width, double delta) {
    RegionLabel lab;
    lab.distance_to_gamma1 = distance_to_curve(gamma1, z);
    lab.n_dist_to_1 = std::abs(static_cast<double>(p.n) * (z - 1.0));
    if (std::abs(z - 1.0) < delta / p.n) {
        lab.region = Region::Disc1;
        return lab;
    }
    const double lv = detail::level_value(p, 1.0, p.c);
    if (z != 0.0 && std::abs(re_phi(z, p.x, p.c) - lv) < u_width) {
        lab.region = Region::NbhdU;
        return lab;
    }
    lab.region = winding_number(gamma1, z) != 0 ? Region::IntGamma1 : Region::ExtGamma1;
    return lab;
}

struct SaddleReport {
    double z0;
    double phi_z0;
    double phi2_z0;
    double phi1_abs;
};

inline SaddleReport saddle_report(const ModelParams& p) {
    if (p.x <= 0.0) throw DomainError("saddle_report needs x > 0");
    const double z0 = p.z0();
    if (z0 <= 1.0) throw DomainError("strong-regime violation: z0 <= 1");
    const PhiEval e = phi(cplx(z0), p);
    SaddleReport s{z0, e.value.real(), e.d2.real(), std::abs(e.d1)};
    if (s.phi1_abs > 1e-12 * (1.0 + 1.0 / z0)) throw AccuracyError("saddle_report: phi'(z0) not zero");
    return s;
}

}  // namespace tuop
