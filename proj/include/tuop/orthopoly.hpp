#pragma once

// Contour moments, Toeplitz determinants, the monic polynomial P_n with its
// bi-orthogonal partner q_n, norming constants, exact moments of
// |det(B_n - x)|^gamma, and the differential identity.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "tuop/errors.hpp"
#include "tuop/model.hpp"
#include "tuop/quadrature.hpp"
#include "tuop/specfun.hpp"

namespace tuop {

struct MomentConfig {
    int ladder = 16;                   // radii x^{-2t}, t = (k + 1/2)/ladder
    std::size_t min_nodes = 1024;
    std::size_t max_nodes = std::size_t(1) << 20;
    double tol = 1e-13;                // node-doubling tolerance, relative to max|w| rho^-j
};

/// m[j] = oint z^-j w(z) dz/(2iz) = pi [z^j] w(z), for j in [-n_max, n_max].
struct MomentTable {
    ModelParams params;
    int n_max = 0;
    std::vector<cplx> m;          // index j + n_max
    std::vector<double> radius;   // circle used for each j
    std::vector<double> error;    // node-doubling estimate for each j
    std::size_t nodes = 0;

    cplx operator[](int j) const {
        if (j < -n_max || j > n_max) throw DomainError("moment index out of table range");
        return m[static_cast<std::size_t>(j + n_max)];
    }
    double max_error() const { return error.empty() ? 0.0 : *std::max_element(error.begin(), error.end()); }
};

namespace detail {

// pi (-1)^k binom(g/2, k): moments of h_gamma alone (x = 0)
inline MomentTable moments_x0(const ModelParams& p, int n_max) {
    MomentTable t;
    t.params = p;
    t.n_max = n_max;
    t.m.assign(2 * n_max + 1, 0.0);
    t.radius.assign(2 * n_max + 1, 2.0);
    t.error.assign(2 * n_max + 1, 0.0);
    cplx c = 1.0;
    const cplx h = 0.5 * p.gamma;
    for (int k = 0; k <= n_max; ++k) {
        t.m[static_cast<std::size_t>(n_max - k)] = kPi * c;
        c *= -(h - static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    return t;
}

}  // namespace detail

inline MomentTable moments(const ModelParams& p, int n_max, const MomentConfig& cfg = {}) {
    if (n_max < 0) throw DomainError("n_max must be non-negative");
    if (p.x == 0.0) return detail::moments_x0(p, n_max);
    const int K = cfg.ladder;
    const double logu = -2.0 * std::log(p.x);  // log x^-2
    std::vector<double> rho(K), logmx(K);
    for (int k = 0; k < K; ++k) rho[k] = std::exp(logu * (k + 0.5) / K);
    auto w = [&](cplx z) { return weight_contour(z, p); };

    std::size_t M = cfg.min_nodes;
    while (M < static_cast<std::size_t>(8 * (n_max + 1))) M *= 2;

    auto table_at = [&](std::size_t nodes, std::vector<std::vector<cplx>>& coef) {
        coef.resize(K);
        for (int k = 0; k < K; ++k) {
            coef[k] = circle_fft(w, rho[k], nodes);
            double mx = 0.0;
            for (std::size_t i = 0; i < nodes; ++i)
                mx = std::max(mx, std::abs(w(std::polar(rho[k], 2.0 * kPi * i / nodes))));
            logmx[k] = std::log(mx);
        }
    };
    // radius index per j, chosen to minimise max|w| rho^-j
    std::vector<int> pick(2 * n_max + 1);
    std::vector<std::vector<cplx>> prev, cur;
    table_at(M, prev);
    for (int j = -n_max; j <= n_max; ++j) {
        int best = 0;
        double bv = HUGE_VAL;
        for (int k = 0; k < K; ++k) {
            const double v = logmx[k] - j * std::log(rho[k]);
            if (v < bv) {
                bv = v;
                best = k;
            }
        }
        pick[static_cast<std::size_t>(j + n_max)] = best;
    }
    auto extract = [&](const std::vector<std::vector<cplx>>& coef, std::size_t nodes, int j) {
        const int k = pick[static_cast<std::size_t>(j + n_max)];
        const std::size_t idx = static_cast<std::size_t>(((j % static_cast<long>(nodes)) + static_cast<long>(nodes)) % static_cast<long>(nodes));
        return kPi * coef[k][idx] * std::pow(rho[k], -static_cast<double>(j));
    };
    MomentTable t;
    t.params = p;
    t.n_max = n_max;
    t.m.resize(2 * n_max + 1);
    t.radius.resize(2 * n_max + 1);
    t.error.resize(2 * n_max + 1);
    while (true) {
        const std::size_t M2 = 2 * M;
        table_at(M2, cur);
        double worst = 0.0;
        for (int j = -n_max; j <= n_max; ++j) {
            const std::size_t s = static_cast<std::size_t>(j + n_max);
            const int k = pick[s];
            const cplx a = extract(prev, M, j);
            const cplx b = extract(cur, M2, j);
            const double scale = kPi * std::exp(logmx[k] - j * std::log(rho[k]));
            t.m[s] = b;
            t.radius[s] = rho[k];
            t.error[s] = std::abs(b - a);
            worst = std::max(worst, std::abs(b - a) / scale);
        }
        t.nodes = M2;
        if (worst <= cfg.tol) break;
        if (M2 >= cfg.max_nodes) throw AccuracyError("moments: node cap reached before convergence");
        M = M2;
        prev.swap(cur);
    }
    return t;
}

/// log T_k for k = 0..n (T_0 = 1), T_k = det{m[l-j]}_{j,l<k}.
struct ToeplitzChain {
    std::vector<double> log_abs_T;
    std::vector<double> phase_T;
    double log_abs(int k) const { return log_abs_T.at(static_cast<std::size_t>(k)); }
};

inline Eigen::MatrixXcd toeplitz_matrix(const MomentTable& mt, int k) {
    Eigen::MatrixXcd A(k, k);
    for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) A(j, l) = mt[l - j];
    return A;
}

inline ToeplitzChain toeplitz_chain(const MomentTable& mt, int n) {
    if (n > mt.n_max) throw DomainError("toeplitz_chain: n exceeds moment table");
    ToeplitzChain tc;
    tc.log_abs_T.assign(1, 0.0);
    tc.phase_T.assign(1, 0.0);
    for (int k = 1; k <= n; ++k) {
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(toeplitz_matrix(mt, k));
        const Eigen::MatrixXcd& U = lu.matrixLU();
        double la = 0.0, ph = 0.0;
        for (int i = 0; i < k; ++i) {
            const double a = std::abs(U(i, i));
            if (!(a > 1e-300)) throw AccuracyError("toeplitz_chain: singular leading minor");
            la += std::log(a);
            ph += std::arg(U(i, i));
        }
        if (lu.permutationP().determinant() < 0) ph += kPi;
        ph = std::remainder(ph, 2.0 * kPi);
        tc.log_abs_T.push_back(la);
        tc.phase_T.push_back(ph);
    }
    return tc;
}

/// c_n = Gamma(g/2+n+1) Gamma(alpha) / Gamma(g/2+n+alpha+1) = chi_hat_n / chi_n.
inline cplx log_norm_ratio(const ModelParams& p, int n) {
    const cplx h = 0.5 * p.gamma;
    return log_gamma(h + (n + 1.0)) + log_gamma(cplx(p.alpha)) - log_gamma(h + (n + p.alpha + 1.0));
}

struct PolyPair {
    int n = 0;
    std::vector<cplx> P;  // monic, increasing powers of z
    std::vector<cplx> Q;  // q_n(z^-1) = sum_i Q[i] z^-i
    double chi = 0.0;
    double chi_hat = 0.0;
    double log_chi = 0.0;
    double residual_P = 0.0;  // normwise backward error |A a - r| / (|A| |a| + |r|)
    double residual_Q = 0.0;
};

/// P_n: oint P_n(z) z^-k w dz/(2iz) = 0 for k < n, monic.
/// q_n: oint z^k q_n(z^-1) w dz/(2iz) = delta_kn / chi_n for k <= n, so that
/// chi_n P_n and q_n are bi-orthonormal and q_n has leading coefficient chi_hat_n.
/// At x = 0 the rescaled polynomial degenerates; P_n is then the planar monic
/// polynomial z^n.
inline PolyPair monic_pair(const ModelParams& p, int n, const MomentTable& mt) {
    if (n < 0) throw DomainError("degree must be non-negative");
    if (n + 1 > mt.n_max) throw DomainError("monic_pair: moment table too short");
    PolyPair pp;
    pp.n = n;
    const ToeplitzChain tc = toeplitz_chain(mt, n + 1);
    const double lc = log_norm_ratio(p, n).real();
    pp.log_chi = 0.5 * (tc.log_abs(n) - tc.log_abs(n + 1) - lc);
    pp.chi = std::exp(pp.log_chi);
    pp.chi_hat = std::exp(pp.log_chi + lc);

    pp.P.assign(n + 1, 0.0);
    pp.P[n] = 1.0;
    if (n > 0 && p.x > 0.0) {
        Eigen::MatrixXcd A(n, n);
        Eigen::VectorXcd rhs(n);
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) A(k, i) = mt[k - i];
            rhs(k) = -mt[k - n];
        }
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
        const Eigen::VectorXcd a = lu.solve(rhs);
        pp.residual_P = (A * a - rhs).norm() / (A.norm() * a.norm() + rhs.norm());
        if (pp.residual_P > 1e-10) throw AccuracyError("monic_pair: Toeplitz solve residual too large");
        for (int i = 0; i < n; ++i) pp.P[i] = a(i);
    }
    Eigen::MatrixXcd B(n + 1, n + 1);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n + 1);
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= n; ++i) B(k, i) = mt[i - k];
    e(n) = 1.0 / pp.chi;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lub(B);
    const Eigen::VectorXcd b = lub.solve(e);
    pp.residual_Q = (B * b - e).norm() / (B.norm() * b.norm() + e.norm());
    if (pp.residual_Q > 1e-10) throw AccuracyError("monic_pair: partner solve residual too large");
    pp.Q.resize(n + 1);
    for (int i = 0; i <= n; ++i) pp.Q[i] = b(i);
    return pp;
}

inline cplx eval_q(const PolyPair& pp, cplx z) {
    cplx s = 0.0;
    const cplx zi = 1.0 / z;
    for (auto it = pp.Q.rbegin(); it != pp.Q.rend(); ++it) s = s * zi + *it;
    return s;
}

/// d/dz q_n(z^-1).
inline cplx eval_dq(const PolyPair& pp, cplx z) {
    cplx s = 0.0;
    const cplx zi = 1.0 / z;
    for (std::size_t i = pp.Q.size(); i-- > 1;) s = s * zi + static_cast<double>(i) * pp.Q[i];
    return -s * zi * zi;
}

inline cplx eval_dpoly(const std::vector<cplx>& c, cplx z) {
    cplx s = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) s = s * z + static_cast<double>(i) * c[i];
    return s;
}

/// Roots of a monic polynomial: balanced companion-matrix eigenvalues and one Newton step.
inline std::vector<cplx> poly_zeros(const std::vector<cplx>& P) {
    const int n = static_cast<int>(P.size()) - 1;
    if (n < 1) throw DomainError("poly_zeros needs degree >= 1");
    bool all_zero = true;
    for (int i = 0; i < n; ++i) all_zero = all_zero && P[i] == 0.0;
    if (all_zero) return std::vector<cplx>(n, 0.0);
    Eigen::VectorXcd c(n + 1);
    for (int i = 0; i <= n; ++i) c(i) = P[i];
    Eigen::PolynomialSolver<cplx, Eigen::Dynamic> solver(c);
    std::vector<cplx> r(solver.roots().data(), solver.roots().data() + n);
    for (auto& z : r) {
        const cplx d = eval_dpoly(P, z);
        if (std::abs(d) > 0.0) {
            const cplx zn = z - poly_eval(P, z) / d;
            if (std::isfinite(zn.real()) && std::isfinite(zn.imag())) z = zn;
        }
    }
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
    return r;
}

/// sum_{j<n} [lgG(g/2+j+1) + lgG(j+alpha+1) - lgG(g/2+j+alpha+1) - lgG(j+1)].
inline cplx rgamma_zero_c(const ModelParams& p) {
    const cplx h = 0.5 * p.gamma;
    CompensatedSum<cplx> s;
    for (int j = 0; j < p.n; ++j)
        s.add(log_gamma(h + (j + 1.0)) + log_gamma(cplx(j + p.alpha + 1.0)) - log_gamma(h + (j + p.alpha + 1.0)) -
              log_gamma(cplx(j + 1.0)));
    return s.value();
}

/// log R_gamma(0): exact product of Gamma ratios.
inline double rgamma_zero(const ModelParams& p) { return rgamma_zero_c(p).real(); }

/// log R_gamma(x) = log T_n - n log pi + log prod Gamma ratios.
inline double rgamma_exact(const ModelParams& p, const MomentConfig& cfg = {}) {
    if (p.n == 0) return 0.0;
    const MomentTable mt = moments(p, p.n + 1, cfg);
    const ToeplitzChain tc = toeplitz_chain(mt, p.n);
    return tc.log_abs(p.n) - p.n * std::log(kPi) + rgamma_zero(p);
}

/// Complex-gamma variant: log R including the phase of T_n.
inline cplx rgamma_exact_c(const ModelParams& p, const MomentConfig& cfg = {}) {
    if (p.n == 0) return 0.0;
    const MomentTable mt = moments(p, p.n + 1, cfg);
    const ToeplitzChain tc = toeplitz_chain(mt, p.n);
    return cplx(tc.log_abs(p.n), tc.phase_T.back()) - p.n * std::log(kPi) + rgamma_zero_c(p);
}

struct PlanarChi {
    double chi = 0.0;
    double gram_residual = 0.0;
    double grid_change = 0.0;          // |chi(2 grid) - chi(grid)| / chi
    std::vector<cplx> P_rescaled;      // x^-n pi_n(x z), pi_n the planar monic polynomial
    Eigen::MatrixXcd gram;
};

struct PlanarConfig {
    int radial_nodes = 48;
    std::size_t angular_nodes = 256;
};

/// chi_n from the planar Gram matrix of 1, z, ..., z^n.
inline PlanarChi planar_chi(const ModelParams& p, int n, const PlanarConfig& cfg = {}) {
    if (n < 0 || n > 12) throw DomainError("planar_chi supports 0 <= n <= 12");
    auto solve = [&](int rn, std::size_t an, PlanarChi& out) {
        const DiscGrid grid = make_disc_grid(p, rn, an);
        out.gram = planar_gram(n, grid);
        Eigen::LLT<Eigen::MatrixXcd> llt(out.gram);
        if (llt.info() != Eigen::Success) throw AccuracyError("planar_chi: Gram matrix not positive definite");
        const Eigen::MatrixXcd L = llt.matrixL();
        out.chi = 1.0 / L(n, n).real();
        const Eigen::MatrixXcd Li = L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(n + 1, n + 1));
        const Eigen::MatrixXcd I = Li * out.gram * Li.adjoint();
        double worst = 0.0;
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k)
                if (j != k) worst = std::max(worst, std::abs(I(j, k)));
        out.gram_residual = worst;
        // monic: sum_i c_i G(i,k) + G(n,k) = 0 for k < n
        std::vector<cplx> c(n + 1, 0.0);
        c[n] = 1.0;
        if (n > 0) {
            const Eigen::MatrixXcd Gt = out.gram.topLeftCorner(n, n).transpose();
            const Eigen::VectorXcd rhs = -out.gram.row(n).head(n).transpose();
            const Eigen::VectorXcd sol = Gt.partialPivLu().solve(rhs);
            for (int i = 0; i < n; ++i) c[i] = sol(i);
        }
        out.P_rescaled.assign(n + 1, 0.0);
        for (int i = 0; i <= n; ++i)
            out.P_rescaled[i] = p.x > 0.0 ? c[i] * std::pow(p.x, i - n) : (i == n ? 1.0 : 0.0);
    };
    PlanarChi coarse, fine;
    solve(cfg.radial_nodes, cfg.angular_nodes, coarse);
    solve(2 * cfg.radial_nodes, 2 * cfg.angular_nodes, fine);
    fine.grid_change = std::abs(fine.chi - coarse.chi) / fine.chi;
    if (fine.gram_residual > 1e-6) throw AccuracyError("planar_chi: Gram residual exceeds 1e-6");
    return fine;
}

enum class DiffidPrefactor { main_text, appendix };

struct DiffidReport {
    double value = 0.0;     // d log R / dx
    cplx I12, I22;
    cplx terms[4];
};

/// Right side of the differential identity for d log R_gamma / dx at u = x^-2.
/// The Cauchy kernel 1/(u-z) is reduced to (z/u)^n/(u-z): the dropped terms
/// integrate to zero by orthogonality, and the remainder is free of cancellation.
inline DiffidReport diffid_rhs(const ModelParams& p, DiffidPrefactor pref = DiffidPrefactor::main_text,
                               std::size_t nodes = 4096, const MomentConfig& cfg = {}) {
    if (p.x <= 0.0) throw DomainError("diffid_rhs needs x > 0");
    const int n = p.n;
    const MomentTable mt = moments(p, n + 2, cfg);
    const PolyPair pp = monic_pair(p, n, mt);
    const double u = 1.0 / (p.x * p.x);
    const double rho = 1.0 / p.x;
    if (std::abs(u - rho) < 1e-3) throw DomainError("diffid_rhs: u too close to the integration circle");
    std::vector<cplx> ptil(pp.P.size());
    for (std::size_t i = 0; i < ptil.size(); ++i) ptil[i] = pp.chi * pp.P[i];
    auto kernel = [&](cplx z) { return std::pow(z / u, n) / (u - z); };
    auto f12 = [&](cplx z) { return std::pow(z, 1 - n) * poly_eval(ptil, z) * kernel(z) * weight_contour(z, p); };
    auto f22 = [&](cplx z) { return eval_q(pp, z) * kernel(z) * weight_contour(z, p); };
    DiffidReport r;
    r.I12 = circle_moment(f12, rho, 0, nodes).value;
    r.I22 = circle_moment(f22, rho, 0, nodes).value;
    r.terms[0] = -static_cast<double>(n) * std::pow(u, n + 1) * eval_q(pp, u) * r.I12;
    r.terms[1] = -static_cast<double>(n) * u;
    r.terms[2] = u * u * u * eval_dpoly(ptil, u) * r.I22;
    r.terms[3] = -std::pow(u, n + 2) * eval_dq(pp, u) * r.I12;
    const cplx s = r.terms[0] + r.terms[1] + r.terms[2] + r.terms[3];
    const double k = 0.5 * p.gamma.real() + p.alpha - (pref == DiffidPrefactor::appendix ? 1.0 : 0.0);
    r.value = (-2.0 * p.x * k * s).real();
    return r;
}

}  // namespace tuop
