#pragma once

// Truncations of Haar unitary matrices and Monte Carlo estimates of E|det(B_n - x)|^gamma.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "tuop/asymptotics.hpp"
#include "tuop/errors.hpp"
#include "tuop/model.hpp"
#include "tuop/quadrature.hpp"

namespace tuop {

/// Independent stream per (seed, index); reproducible regardless of scheduling.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

/// Thread count from TUOP_THREADS (default 1).
inline unsigned thread_count() {
    const char* s = std::getenv("TUOP_THREADS");
    if (!s) return 1;
    const long v = std::strtol(s, nullptr, 10);
    return v > 0 ? static_cast<unsigned>(v) : 1u;
}

/// Runs f(i) for i in [0, count) on the configured number of threads.
template <typename F>
void parallel_for(std::size_t count, F&& f) {
    const unsigned T = std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
    if (T <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < T; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += T) f(i);
        });
    for (auto& th : pool) th.join();
}

/// Complex Gaussian matrix with E|z|^2 = 1.
inline Eigen::MatrixXcd complex_gaussian(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd Z(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) {
            const double re = nd(rng);
            const double im = nd(rng);
            Z(i, j) = cplx(re, im);
        }
    return Z;
}

/// Haar unitary: QR of a complex Gaussian matrix with the diagonal of R made positive.
inline Eigen::MatrixXcd haar_unitary(int N, std::mt19937_64& rng, double* unitarity_error = nullptr) {
    const Eigen::MatrixXcd Z = complex_gaussian(N, N, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd Q = qr.householderQ();
    const Eigen::MatrixXcd& R = qr.matrixQR();
    for (int j = 0; j < N; ++j) {
        const cplx d = R(j, j);
        const double a = std::abs(d);
        if (a > 0.0) Q.col(j) *= d / a;
    }
    const double err = (Q.adjoint() * Q - Eigen::MatrixXcd::Identity(N, N)).cwiseAbs().maxCoeff();
    if (unitarity_error) *unitarity_error = err;
    if (err > 1e-10) throw AccuracyError("haar_unitary: unitarity error exceeds 1e-10");
    return Q;
}

struct EnsembleSample {
    std::vector<cplx> eigenvalues;
    double logdet = 0.0;  // log|det(B_n - x)|
    std::uint64_t stream = 0;
    std::uint64_t counter = 0;
    double unitarity_error = 0.0;
};

inline void check_sizes(int n, int N) {
    if (n < 1 || N <= n) throw DomainError("need 1 <= n < N");
    if (N > 512) throw DomainError("N is capped at 512");
}

/// Full draw: Haar U, leading n x n block, its eigenvalues and log|det(B - x)|.
inline EnsembleSample sample_truncation(int n, int N, double x, std::uint64_t seed, std::uint64_t index) {
    check_sizes(n, N);
    auto rng = stream_rng(seed, index);
    EnsembleSample s;
    s.stream = seed;
    s.counter = index;
    const Eigen::MatrixXcd U = haar_unitary(N, rng, &s.unitarity_error);
    const Eigen::MatrixXcd B = U.topLeftCorner(n, n);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B, false);
    if (es.info() != Eigen::Success) throw AccuracyError("eigenvalue solver failed");
    CompensatedSum<double> ld;
    for (int i = 0; i < n; ++i) {
        s.eigenvalues.push_back(es.eigenvalues()(i));
        ld.add(std::log(std::abs(es.eigenvalues()(i) - x)));
    }
    s.logdet = ld.value();
    return s;
}

/// log|det(B_n - x)| without forming U: the first n columns of U are Z R^{-1} with
/// Z an N x n Gaussian and R the Cholesky factor of Z*Z, so det(B - x) = det(Z_top - x R)/det R.
inline double sample_logdet(int n, int N, double x, std::uint64_t seed, std::uint64_t index) {
    check_sizes(n, N);
    auto rng = stream_rng(seed, index);
    const Eigen::MatrixXcd Z = complex_gaussian(N, n, rng);
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
    G.selfadjointView<Eigen::Lower>().rankUpdate(Z.adjoint());
    Eigen::LLT<Eigen::MatrixXcd> llt(G);
    if (llt.info() != Eigen::Success) throw AccuracyError("sample_logdet: Cholesky failed");
    const Eigen::MatrixXcd R = llt.matrixU();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Z.topRows(n) - x * R);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::log(std::abs(lu.matrixLU()(i, i))) - std::log(R(i, i).real());
    return s;
}

struct McEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    bool variance_warning = false;
};

/// All log|det(B_n - x)| draws in sample-index order.
inline std::vector<double> sample_logdets(int n, int N, double x, std::size_t samples, std::uint64_t seed) {
    std::vector<double> out(samples);
    parallel_for(samples, [&](std::size_t i) { out[i] = sample_logdet(n, N, x, seed, i); });
    return out;
}

/// Mean and standard error of |det(B_n - x)|^gamma (real gamma). gamma <= -1 has infinite
/// variance and is refused unless allow_heavy_tail is set.
inline McEstimate mc_rgamma(const ModelParams& p, std::size_t samples, std::uint64_t seed,
                            bool allow_heavy_tail = false) {
    if (p.gamma.imag() != 0.0) throw DomainError("mc_rgamma needs real gamma");
    if (samples < 2) throw DomainError("mc_rgamma needs at least 2 samples");
    const double g = p.gamma.real();
    McEstimate e;
    e.samples = samples;
    e.seed = seed;
    if (g <= -1.0) {
        if (!allow_heavy_tail) throw DomainError("gamma <= -1: estimator variance is infinite");
        e.variance_warning = true;
    }
    if (g == 0.0) {
        e.mean = 1.0;
        e.standard_error = 0.0;
        return e;
    }
    const std::vector<double> ld = sample_logdets(p.n, p.N, p.x, samples, seed);
    CompensatedSum<double> s;
    for (double l : ld) s.add(std::exp(g * l));
    e.mean = s.value() / static_cast<double>(samples);
    CompensatedSum<double> v;
    for (double l : ld) {
        const double d = std::exp(g * l) - e.mean;
        v.add(d * d);
    }
    const double var = v.value() / static_cast<double>(samples - 1);
    e.standard_error = std::sqrt(var / static_cast<double>(samples));
    return e;
}

struct CltSummary {
    double mean = 0.0;
    double variance = 0.0;
    double ks_distance = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<double> standardized;
};

inline double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

/// Kolmogorov-Smirnov distance of the sample to N(0,1).
inline double ks_distance_normal(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const double m = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double F = normal_cdf(v[i]);
        d = std::max({d, F - static_cast<double>(i) / m, static_cast<double>(i + 1) / m - F});
    }
    return d;
}

inline CltSummary clt_empirical(const ModelParams& p, std::size_t samples, std::uint64_t seed) {
    if (samples < 2) throw DomainError("clt_empirical needs at least 2 samples");
    CltSummary c;
    c.samples = samples;
    c.seed = seed;
    const std::vector<double> ld = sample_logdets(p.n, p.N, p.x, samples, seed);
    c.standardized.reserve(samples);
    for (double l : ld) c.standardized.push_back(clt_standardize(l, p));
    CompensatedSum<double> s;
    for (double t : c.standardized) s.add(t);
    c.mean = s.value() / static_cast<double>(samples);
    CompensatedSum<double> v;
    for (double t : c.standardized) v.add((t - c.mean) * (t - c.mean));
    c.variance = v.value() / static_cast<double>(samples - 1);
    c.ks_distance = ks_distance_normal(c.standardized);
    return c;
}

}  // namespace tuop
