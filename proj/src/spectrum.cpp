// SPDX-License-Identifier: Apache-2.0
#include "qpw/spectrum.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include "qpw/solve.hpp"

namespace qpw {

namespace {

Spectrum from_singular_values(double sigma_max, double sigma_min, SpectrumMethod method,
                              double tol) {
    if (!(sigma_min > 1e-14 * sigma_max) || sigma_min <= 0.0)
        throw std::runtime_error("spectral_metrics: matrix is numerically singular");
    Spectrum s;
    s.sigma_min = sigma_min;
    s.sigma_max = sigma_max;
    s.kappa = sigma_max / sigma_min;
    s.method = method;
    s.tol = tol;
    return s;
}

Eigen::VectorXd deterministic_start(index_t n) {
    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (index_t i = 0; i < n; ++i) v[i] = dist(rng);
    v.normalize();
    return v;
}

}  // namespace

Spectrum spectral_metrics_dense(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("spectral_metrics: matrix must be square");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return from_singular_values(sv(0), sv(sv.size() - 1), SpectrumMethod::Direct, tol);
}

Spectrum spectral_metrics(const BandedMatrix& m, double tol, SpectrumMethod method) {
    if (method == SpectrumMethod::Direct) return spectral_metrics_dense(m.dense(), tol);

    const index_t n = m.size();
    const int max_iters = 20000;

    // sigma_max: power iteration on A^T A.
    Eigen::VectorXd v = deterministic_start(n);
    double sigma_max = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXd w = banded_apply_transpose(m, banded_apply(m, v));
        const double lambda = w.norm();
        if (lambda == 0.0) throw std::runtime_error("spectral_metrics: zero matrix");
        w /= lambda;
        const double next = std::sqrt(lambda);
        const bool converged = it > 0 && std::fabs(next - sigma_max) <= tol * next;
        sigma_max = next;
        v = w;
        if (converged) break;
        if (it == max_iters - 1)
            throw std::runtime_error("spectral_metrics: power iteration did not converge");
    }

    // sigma_min: inverse iteration on A^T A through one sparse factorisation.
    Eigen::SparseMatrix<double> s = to_sparse(m);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(s);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("spectral_metrics: matrix is numerically singular");
    v = deterministic_start(n);
    double sigma_min = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXd w = lu.solve(lu.adjoint().solve(v).eval());
        if (lu.info() != Eigen::Success)
            throw std::runtime_error("spectral_metrics: inverse iteration solve failed");
        const double lambda = w.norm();
        if (lambda == 0.0) throw std::runtime_error("spectral_metrics: inverse iteration stalled");
        w /= lambda;
        const double next = 1.0 / std::sqrt(lambda);
        const bool converged = it > 0 && std::fabs(next - sigma_min) <= tol * next;
        sigma_min = next;
        v = w;
        if (converged) break;
        if (it == max_iters - 1)
            throw std::runtime_error("spectral_metrics: inverse iteration did not converge");
    }

    return from_singular_values(sigma_max, sigma_min, SpectrumMethod::Iterative, tol);
}

double kappa_sub(double s, double sigma_min) {
    if (s <= 0.0) throw std::invalid_argument("kappa_sub: subnormalisation must be positive");
    if (sigma_min <= 0.0) throw std::invalid_argument("kappa_sub: sigma_min must be positive");
    return s / sigma_min;
}

}  // namespace qpw
