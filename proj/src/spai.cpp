// SPDX-License-Identifier: Apache-2.0
#include "qpw/spai.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

namespace qpw {

namespace {

Eigen::MatrixXd gather_submatrix(const BandedMatrix& a, const std::vector<index_t>& rows,
                                 const std::vector<index_t>& cols) {
    Eigen::MatrixXd sub(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows.size(); ++r) sub(r, c) = a.at(rows[r], cols[c]);
    return sub;
}

Eigen::VectorXd solve_reduced(const Eigen::MatrixXd& sub, Eigen::Index unit_pos, index_t j) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    const Eigen::MatrixXd& packed = lu.matrixLU();
    double pivot_max = 0.0, pivot_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < packed.rows(); ++i) {
        const double p = std::fabs(packed(i, i));
        pivot_max = std::max(pivot_max, p);
        pivot_min = std::min(pivot_min, p);
    }
    if (pivot_max == 0.0 || pivot_min / pivot_max < 1e-14)
        throw std::runtime_error("spai_column: singular reduced system at index " +
                                 std::to_string(j));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(sub.rows());
    e[unit_pos] = 1.0;
    return lu.solve(e);
}

}  // namespace

BandedMatrix spai_column(const BandedMatrix& a, const PatternMask& pattern, SpaiSide side,
                         int threads) {
    const index_t n = a.size();
    if (pattern.size() != n) throw std::invalid_argument("spai_column: pattern size mismatch");

    std::vector<std::vector<index_t>> supports(n);
    std::vector<Eigen::VectorXd> solutions(n);
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto solve_index = [&](index_t j) {
        const std::vector<index_t> support = pattern.row_columns(j);
        auto unit = std::lower_bound(support.begin(), support.end(), j);
        if (unit == support.end() || *unit != j)
            throw std::runtime_error("spai_column: pattern row " + std::to_string(j) +
                                     " does not contain the diagonal");
        const Eigen::Index unit_pos = unit - support.begin();
        const Eigen::MatrixXd sub = gather_submatrix(a, support, support);
        // Left form solves m A = e, i.e. A^T m^T = e^T.
        const Eigen::MatrixXd sys =
            side == SpaiSide::Left ? Eigen::MatrixXd(sub.transpose()) : sub;
        solutions[j] = solve_reduced(sys, unit_pos, j);
        supports[j] = std::move(support);
    };

    const auto run_range = [&](index_t begin, index_t end) {
        for (index_t j = begin; j < end; ++j) {
            if (failure) return;
            try {
                solve_index(j);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (threads <= 1) {
        run_range(0, n);
    } else {
        const int nthreads = static_cast<int>(std::min<index_t>(threads, n));
        std::vector<std::thread> pool;
        const index_t chunk = (n + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(run_range, t * chunk, std::min<index_t>((t + 1) * chunk, n));
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    BandedMatrix p(n);
    for (index_t j = 0; j < n; ++j) {
        const auto& support = supports[j];
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (side == SpaiSide::Left) {
                p.add_at(j, support[i], solutions[j][static_cast<Eigen::Index>(i)]);
            } else {
                p.add_at(support[i], j, solutions[j][static_cast<Eigen::Index>(i)]);
            }
        }
    }
    return p;
}

BandedMatrix spai_column(const BandedMatrix& a, const MeshDims& mesh, int infill, SpaiSide side,
                         int threads) {
    if (mesh.cells() != a.size()) throw std::invalid_argument("spai_column: mesh size mismatch");
    const StencilPattern base = mesh.rank() == 3 ? seven_point_stencil() : five_point_stencil();
    const StencilPattern pattern = infill_pattern(base, infill);
    return spai_column(a, PatternMask::from_stencil(pattern, mesh), side, threads);
}

namespace {

BandedMatrix banded_scale(const BandedMatrix& m, double factor) {
    BandedMatrix out(m.size());
    for (const auto& [k, values] : m.diagonals()) {
        std::vector<double> v(values.size());
        for (std::size_t t = 0; t < values.size(); ++t) v[t] = factor * values[t];
        out.set_diagonal(k, std::move(v));
    }
    return out;
}

BandedMatrix banded_transpose(const BandedMatrix& m) {
    BandedMatrix out(m.size());
    // Transposition flips the offset sign; column-order storage of offset k
    // equals the storage of offset -k in the transpose.
    for (const auto& [k, values] : m.diagonals()) out.set_diagonal(-k, values);
    return out;
}

/// I - A*M kept in banded form.
BandedMatrix residual_matrix(const BandedMatrix& a, const BandedMatrix& m) {
    BandedMatrix g = banded_scale(banded_multiply(a, m), -1.0);
    std::vector<double>& d0 = g.ensure_diagonal(0);
    for (double& v : d0) v += 1.0;
    return g;
}

double frobenius2(const BandedMatrix& m) {
    double sum = 0.0;
    for (const auto& [k, values] : m.diagonals())
        for (double v : values) sum += v * v;
    return sum;
}

double dot_entries(const BandedMatrix& x, const BandedMatrix& y) {
    double sum = 0.0;
    for (const auto& [k, values] : x.diagonals()) {
        if (!y.has_diagonal(k)) continue;
        const std::vector<double>& other = y.diagonal(k);
        for (std::size_t t = 0; t < values.size(); ++t) sum += values[t] * other[t];
    }
    return sum;
}

BandedMatrix banded_add(const BandedMatrix& x, double alpha, const BandedMatrix& y) {
    BandedMatrix out = x;
    for (const auto& [k, values] : y.diagonals()) {
        std::vector<double>& dest = out.ensure_diagonal(k);
        for (std::size_t t = 0; t < values.size(); ++t) dest[t] += alpha * values[t];
    }
    return out;
}

BandedMatrix drop_outside(const BandedMatrix& m, const PatternMask& pattern) {
    const index_t n = m.size();
    BandedMatrix out(n);
    for (const auto& [k, values] : m.diagonals()) {
        const index_t len = n - std::llabs(k);
        std::vector<double> kept(len, 0.0);
        bool any = false;
        for (index_t t = 0; t < len; ++t) {
            const index_t row = k >= 0 ? t + k : t;
            const index_t col = k >= 0 ? t : t - k;
            if (values[t] != 0.0 && pattern.contains(row, col)) {
                kept[t] = values[t];
                any = true;
            }
        }
        if (any) out.set_diagonal(k, std::move(kept));
    }
    return out;
}

}  // namespace

double spai_residual_norm(const BandedMatrix& a, const BandedMatrix& m) {
    return std::sqrt(frobenius2(residual_matrix(a, m)));
}

BandedMatrix spai_iterative(const BandedMatrix& a, int k_max, const PatternMask* pattern,
                            SpaiDropOn drop_on) {
    if (k_max < 1) throw std::invalid_argument("spai_iterative: k_max must be >= 1");

    const BandedMatrix at = banded_transpose(a);
    const double alpha0 = std::sqrt(frobenius2(a) / frobenius2(banded_multiply(a, at)));
    BandedMatrix m = banded_scale(at, alpha0);
    if (pattern) m = drop_outside(m, *pattern);

    for (int k = 0; k < k_max; ++k) {
        const BandedMatrix g = residual_matrix(a, m);
        // Dropping on G restricts the search direction; the step size is the
        // exact line-search coefficient for that direction, which reduces to
        // the plain tr(G^T A G)/||A G||^2 rule when nothing is dropped.
        const BandedMatrix dir =
            (pattern && drop_on == SpaiDropOn::Residual) ? drop_outside(g, *pattern) : g;
        const BandedMatrix ag = banded_multiply(a, dir);
        const double denom = frobenius2(ag);
        if (denom == 0.0) break;  // stationary point
        const double alpha = dot_entries(g, ag) / denom;
        m = banded_add(m, alpha, dir);
        if (pattern && drop_on == SpaiDropOn::Update) m = drop_outside(m, *pattern);
    }
    return m;
}

}  // namespace qpw
