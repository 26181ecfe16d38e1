// SPDX-License-Identifier: Apache-2.0
#include "qpw/solve.hpp"

#include <cstdlib>
#include <stdexcept>

#include <Eigen/SparseLU>

namespace qpw {

Eigen::SparseMatrix<double> to_sparse(const BandedMatrix& m) {
    const index_t n = m.size();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(m.nonzero_count()));
    for (const auto& [k, values] : m.diagonals()) {
        const index_t len = n - std::llabs(k);
        for (index_t t = 0; t < len; ++t) {
            if (values[t] == 0.0) continue;
            const index_t row = k >= 0 ? t + k : t;
            const index_t col = k >= 0 ? t : t - k;
            triplets.emplace_back(static_cast<int>(row), static_cast<int>(col), values[t]);
        }
    }
    Eigen::SparseMatrix<double> out(n, n);
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

Eigen::VectorXd sparse_solve(const BandedMatrix& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sparse_solve: dimension mismatch");
    Eigen::SparseMatrix<double> s = to_sparse(a);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(s);
    if (lu.info() != Eigen::Success) throw std::runtime_error("sparse_solve: factorisation failed");
    Eigen::VectorXd x = lu.solve(b);
    if (lu.info() != Eigen::Success) throw std::runtime_error("sparse_solve: solve failed");
    return x;
}

Eigen::VectorXd banded_apply(const BandedMatrix& a, const Eigen::VectorXd& x) {
    const index_t n = a.size();
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (const auto& [k, values] : a.diagonals()) {
        const index_t len = n - std::llabs(k);
        for (index_t t = 0; t < len; ++t) {
            const index_t row = k >= 0 ? t + k : t;
            const index_t col = k >= 0 ? t : t - k;
            y[row] += values[t] * x[col];
        }
    }
    return y;
}

Eigen::VectorXd banded_apply_transpose(const BandedMatrix& a, const Eigen::VectorXd& x) {
    const index_t n = a.size();
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (const auto& [k, values] : a.diagonals()) {
        const index_t len = n - std::llabs(k);
        for (index_t t = 0; t < len; ++t) {
            const index_t row = k >= 0 ? t + k : t;
            const index_t col = k >= 0 ? t : t - k;
            y[col] += values[t] * x[row];
        }
    }
    return y;
}

}  // namespace qpw
