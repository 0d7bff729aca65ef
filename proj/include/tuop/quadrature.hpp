#pragma once

// Trapezoid rules on circles and closed curves, Gauss-Jacobi nodes, and the
// weighted planar quadrature on the unit disc.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "tuop/errors.hpp"
#include "tuop/model.hpp"
#include "tuop/specfun.hpp"

namespace tuop {

/// Neumaier-compensated sum, accumulated in call order.
template <typename T>
class CompensatedSum {
public:
    void add(T v) {
        const T t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

template <>
class CompensatedSum<cplx> {
public:
    void add(cplx v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<double> re_, im_;
};

using ComplexFn = std::function<cplx(cplx)>;

/// Closed periodic curve sampled at equispaced parameter values t_k = 2 pi k / M.
struct ContourGrid {
    std::vector<cplx> points;
    std::vector<cplx> derivatives;  // dz/dt
    std::size_t node_count() const { return points.size(); }
};

inline ContourGrid circle_grid(double radius, std::size_t M, cplx center = 0.0) {
    ContourGrid g;
    g.points.resize(M);
    g.derivatives.resize(M);
    for (std::size_t k = 0; k < M; ++k) {
        const cplx e = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(M));
        g.points[k] = center + radius * e;
        g.derivatives[k] = cplx(0.0, 1.0) * radius * e;
    }
    return g;
}

struct QuadValue {
    cplx value;
    double error;  // |I(2M) - I(M)|
};

/// (1/2 pi i)-free trapezoid sum of f(z) dz/dt over a grid: returns oint f(z) dz.
inline cplx contour_integral(const ComplexFn& f, const ContourGrid& g) {
    CompensatedSum<cplx> s;
    for (std::size_t k = 0; k < g.node_count(); ++k) s.add(f(g.points[k]) * g.derivatives[k]);
    return s.value() * (2.0 * kPi / static_cast<double>(g.node_count()));
}

/// oint_{|z|=radius} z^-j f(z) dz/(2iz) with node-doubling error estimate.
inline QuadValue circle_moment(const ComplexFn& f, double radius, int j, std::size_t M = 512,
                               double tol = -1.0) {
    auto once = [&](std::size_t m) {
        CompensatedSum<cplx> s;
        for (std::size_t k = 0; k < m; ++k) {
            const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
            const cplx z = std::polar(radius, th);
            s.add(f(z) * std::polar(std::pow(radius, -j), -j * th));
        }
        return kPi * s.value() / static_cast<double>(m);
    };
    const cplx a = once(M);
    const cplx b = once(2 * M);
    QuadValue q{b, std::abs(b - a)};
    if (tol > 0.0 && q.error > tol * std::max(1.0, std::abs(b)))
        throw AccuracyError("circle_moment: node doubling changed the value beyond tolerance");
    return q;
}

/// Laurent coefficients c[j] (j = 0..M-1, indices mod M) of f sampled on |z| = radius:
/// c[j] = (1/M) sum_k f(z_k) z_k^-j.
inline std::vector<cplx> circle_fft(const ComplexFn& f, double radius, std::size_t M) {
    std::vector<cplx> in(M), out;
    for (std::size_t k = 0; k < M; ++k)
        in[k] = f(std::polar(radius, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(M)));
    Eigen::FFT<double> fft;
    fft.fwd(out, in);
    for (auto& v : out) v /= static_cast<double>(M);
    return out;
}

/// Gauss-Jacobi rule on [0,1] for weight t^b (1-t)^a (Golub-Welsch).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule gauss_jacobi01(int m, double a, double b) {
    if (m < 1) throw DomainError("gauss_jacobi01 needs at least one node");
    if (!(a > -1.0 && b > -1.0)) throw DomainError("Jacobi exponents must exceed -1");
    // Jacobi on [-1,1] with weight (1-s)^a (1+s)^b
    Eigen::VectorXd diag(m), sub(std::max(m - 1, 1));
    const double ab = a + b;
    for (int k = 0; k < m; ++k) {
        const double s = 2.0 * k + ab;
        diag(k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < m; ++k) {
        const double s = 2.0 * k + ab;
        double beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        if (k == 1 && std::abs(ab + 1.0) < 1e-14) beta = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        sub(k - 1) = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (m == 1) {
        Eigen::MatrixXd one(1, 1);
        one(0, 0) = diag(0);
        es.compute(one);
    } else {
        es.computeFromTridiagonal(diag, sub.head(m - 1));
    }
    // total mass of t^b (1-t)^a on [0,1]
    const double mu0 = std::exp(log_gamma(a + 1.0) + log_gamma(b + 1.0) - log_gamma(a + b + 2.0));
    GaussRule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    for (int k = 0; k < m; ++k) {
        r.nodes[k] = 0.5 * (1.0 + es.eigenvalues()(k));
        const double v0 = es.eigenvectors()(0, k);
        r.weights[k] = mu0 * v0 * v0;
    }
    return r;
}

/// Nodes and weights for int_D f(z) (1-|z|^2)^(alpha-1) |z-x|^gamma d^2z.
/// Polar coordinates about the singular point x: z = x + rho e^{i theta},
/// rho = rho_max(theta) t, with Gauss-Jacobi weight t^(gamma+1) (1-t)^(alpha-1).
struct DiscGrid {
    GaussRule radial;
    std::size_t angular = 0;
    std::vector<cplx> nodes;
    std::vector<double> weights;
};

inline DiscGrid make_disc_grid(const ModelParams& p, int radial_nodes = 64, std::size_t angular_nodes = 512) {
    if (p.gamma.imag() != 0.0) throw DomainError("planar quadrature supports real gamma only");
    const double g = p.gamma.real();
    const double x = p.x;
    DiscGrid d;
    d.radial = gauss_jacobi01(radial_nodes, p.alpha - 1.0, g + 1.0);
    d.angular = angular_nodes;
    d.nodes.reserve(angular_nodes * radial_nodes);
    d.weights.reserve(angular_nodes * radial_nodes);
    const double dth = 2.0 * kPi / static_cast<double>(angular_nodes);
    for (std::size_t k = 0; k < angular_nodes; ++k) {
        const double th = dth * static_cast<double>(k);
        const double ct = std::cos(th), st = std::sin(th);
        const double root = std::sqrt(1.0 - x * x * st * st);
        const double rmax = -x * ct + root;
        const double rother = x * ct + root;
        const double scale = dth * std::pow(rmax, g + p.alpha + 1.0);
        const cplx e(ct, st);
        for (int i = 0; i < radial_nodes; ++i) {
            const double t = d.radial.nodes[i];
            d.nodes.push_back(x + rmax * t * e);
            d.weights.push_back(scale * d.radial.weights[i] * std::pow(rmax * t + rother, p.alpha - 1.0));
        }
    }
    return d;
}

inline cplx poly_eval(const std::vector<cplx>& coef, cplx z) {
    cplx s = 0.0;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) s = s * z + *it;
    return s;
}

/// int_D p(z) conj(q(z)) dmu(z); coefficients in increasing degree.
inline cplx planar_inner_product(const std::vector<cplx>& pcoef, const std::vector<cplx>& qcoef,
                                 const DiscGrid& grid) {
    CompensatedSum<cplx> s;
    for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
        const cplx z = grid.nodes[k];
        s.add(grid.weights[k] * poly_eval(pcoef, z) * std::conj(poly_eval(qcoef, z)));
    }
    return s.value();
}

/// Gram matrix G_jk = int_D z^j conj(z^k) dmu, j,k = 0..deg.
inline Eigen::MatrixXcd planar_gram(int deg, const DiscGrid& grid) {
    const int m = deg + 1;
    std::vector<CompensatedSum<cplx>> acc(static_cast<std::size_t>(m * m));
    std::vector<cplx> pw(m);
    for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
        const cplx z = grid.nodes[k];
        pw[0] = 1.0;
        for (int j = 1; j < m; ++j) pw[j] = pw[j - 1] * z;
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l) acc[static_cast<std::size_t>(j * m + l)].add(grid.weights[k] * pw[j] * std::conj(pw[l]));
    }
    Eigen::MatrixXcd G(m, m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) G(j, l) = acc[static_cast<std::size_t>(j * m + l)].value();
    return G;
}

}  // namespace tuop
