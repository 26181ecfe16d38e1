// SPDX-License-Identifier: Apache-2.0
#include "qpw/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qpw {

BandedMatrix::BandedMatrix(index_t n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("BandedMatrix: dimension must be positive");
}

bool BandedMatrix::has_diagonal(index_t offset) const {
    return diagonals_.count(offset) > 0;
}

const std::vector<double>& BandedMatrix::diagonal(index_t offset) const {
    auto it = diagonals_.find(offset);
    if (it == diagonals_.end())
        throw std::out_of_range("BandedMatrix: diagonal " + std::to_string(offset) + " not stored");
    return it->second;
}

void BandedMatrix::set_diagonal(index_t offset, std::vector<double> values) {
    if (std::llabs(offset) >= n_)
        throw std::invalid_argument("BandedMatrix: offset out of range");
    if (static_cast<index_t>(values.size()) != n_ - std::llabs(offset))
        throw std::invalid_argument("BandedMatrix: diagonal length mismatch");
    diagonals_[offset] = std::move(values);
}

std::vector<double>& BandedMatrix::ensure_diagonal(index_t offset) {
    if (std::llabs(offset) >= n_)
        throw std::invalid_argument("BandedMatrix: offset out of range");
    auto it = diagonals_.find(offset);
    if (it == diagonals_.end()) {
        it = diagonals_.emplace(offset, std::vector<double>(n_ - std::llabs(offset), 0.0)).first;
    }
    return it->second;
}

double BandedMatrix::at(index_t row, index_t col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_)
        throw std::out_of_range("BandedMatrix: index out of range");
    auto it = diagonals_.find(row - col);
    if (it == diagonals_.end()) return 0.0;
    return it->second[diag_index(row - col, row, col)];
}

void BandedMatrix::add_at(index_t row, index_t col, double value) {
    if (row < 0 || row >= n_ || col < 0 || col >= n_)
        throw std::out_of_range("BandedMatrix: index out of range");
    ensure_diagonal(row - col)[diag_index(row - col, row, col)] += value;
}

std::vector<index_t> BandedMatrix::offsets() const {
    std::vector<index_t> out;
    out.reserve(diagonals_.size());
    for (const auto& [k, v] : diagonals_) out.push_back(k);
    return out;
}

double BandedMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& [k, values] : diagonals_)
        for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

index_t BandedMatrix::nonzero_count(double tol) const {
    index_t count = 0;
    for (const auto& [k, values] : diagonals_)
        for (double v : values)
            if (std::fabs(v) > tol) ++count;
    return count;
}

Eigen::MatrixXd BandedMatrix::dense() const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& [k, values] : diagonals_) {
        const index_t len = n_ - std::llabs(k);
        for (index_t t = 0; t < len; ++t) {
            const index_t row = k >= 0 ? t + k : t;
            const index_t col = k >= 0 ? t : t - k;
            out(row, col) = values[t];
        }
    }
    return out;
}

BandedMatrix BandedMatrix::from_dense(const Eigen::MatrixXd& a, double tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("from_dense: matrix must be square");
    BandedMatrix out(a.rows());
    const index_t n = a.rows();
    for (index_t k = -(n - 1); k <= n - 1; ++k) {
        const index_t len = n - std::llabs(k);
        bool any = false;
        std::vector<double> values(len, 0.0);
        for (index_t t = 0; t < len; ++t) {
            const index_t row = k >= 0 ? t + k : t;
            const index_t col = k >= 0 ? t : t - k;
            const double v = a(row, col);
            if (std::fabs(v) > tol) {
                values[t] = v;
                any = true;
            }
        }
        if (any) out.set_diagonal(k, std::move(values));
    }
    return out;
}

BandedMatrix BandedMatrix::identity(index_t n) {
    BandedMatrix out(n);
    out.set_diagonal(0, std::vector<double>(n, 1.0));
    return out;
}

DiagonalScaleResult diagonal_scale(const BandedMatrix& a) {
    const index_t n = a.size();
    if (!a.has_diagonal(0))
        throw std::invalid_argument("diagonal_scale: main diagonal not stored");
    const std::vector<double>& d = a.diagonal(0);
    for (index_t i = 0; i < n; ++i)
        if (d[i] == 0.0)
            throw std::invalid_argument("diagonal_scale: zero entry on main diagonal at row " +
                                        std::to_string(i));

    DiagonalScaleResult out;
    out.scaled = BandedMatrix(n);
    for (const auto& [k, values] : a.diagonals()) {
        const index_t len = n - std::llabs(k);
        std::vector<double> scaled(len);
        for (index_t t = 0; t < len; ++t) {
            const index_t row = k >= 0 ? t + k : t;
            scaled[t] = values[t] / d[row];
        }
        out.scaled.set_diagonal(k, std::move(scaled));
    }
    out.d = BandedMatrix(n);
    out.d.set_diagonal(0, d);
    return out;
}

MaxNormScaleResult max_norm_scale(const BandedMatrix& a) {
    const double r = a.max_abs();
    if (r == 0.0) throw std::invalid_argument("max_norm_scale: all-zero matrix");
    MaxNormScaleResult out;
    out.r = r;
    out.scaled = BandedMatrix(a.size());
    for (const auto& [k, values] : a.diagonals()) {
        std::vector<double> scaled(values.size());
        for (std::size_t t = 0; t < values.size(); ++t) scaled[t] = values[t] / r;
        out.scaled.set_diagonal(k, std::move(scaled));
    }
    return out;
}

BandedMatrix banded_multiply(const BandedMatrix& p, const BandedMatrix& a) {
    const index_t n = p.size();
    if (a.size() != n) throw std::invalid_argument("banded_multiply: dimension mismatch");

    BandedMatrix out(n);
    for (const auto& [kp, pv] : p.diagonals()) {
        for (const auto& [ka, av] : a.diagonals()) {
            const index_t k = kp + ka;
            if (std::llabs(k) > n - 1) continue;
            std::vector<double>& rv = out.ensure_diagonal(k);
            // Entry (r, c) with r - c = k uses P(r, m) * A(m, c) at m = c + ka.
            const index_t c_lo = std::max<index_t>({0, -k, -ka});
            const index_t c_hi = std::min<index_t>({n - 1, n - 1 - k, n - 1 - ka});
            for (index_t c = c_lo; c <= c_hi; ++c) {
                const index_t m = c + ka;
                const index_t r = c + k;
                const double pe = pv[diag_index(kp, r, m)];
                const double ae = av[diag_index(ka, m, c)];
                rv[diag_index(k, r, c)] += pe * ae;
            }
        }
    }
    return out;
}

DropZeroResult drop_zero_diagonals(const BandedMatrix& m, double tol) {
    if (tol < 0.0) throw std::invalid_argument("drop_zero_diagonals: tol must be >= 0");
    DropZeroResult out;
    out.matrix = BandedMatrix(m.size());
    for (const auto& [k, values] : m.diagonals()) {
        double mx = 0.0;
        for (double v : values) mx = std::max(mx, std::fabs(v));
        if (mx <= tol) {
            ++out.removed;
        } else {
            out.matrix.set_diagonal(k, values);
        }
    }
    return out;
}

double default_drop_tolerance(const BandedMatrix& m) {
    return 1e-12 * m.max_abs();
}

bool is_power_of_two(index_t n) {
    return n > 0 && (n & (n - 1)) == 0;
}

BandedMatrix pad_to_power_of_two(const BandedMatrix& m) {
    if (is_power_of_two(m.size())) return m;
    index_t n2 = 1;
    while (n2 < m.size()) n2 <<= 1;
    BandedMatrix out(n2);
    for (const auto& [k, values] : m.diagonals()) {
        std::vector<double>& dest = out.ensure_diagonal(k);
        std::copy(values.begin(), values.end(), dest.begin());
    }
    std::vector<double>& d0 = out.ensure_diagonal(0);
    for (index_t i = m.size(); i < n2; ++i) d0[i] = 1.0;
    return out;
}

}  // namespace qpw
