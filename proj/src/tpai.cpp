// SPDX-License-Identifier: Apache-2.0
#include "qpw/tpai.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

namespace qpw {

BandedMatrix toeplitz_average(const BandedMatrix& m) {
    BandedMatrix out(m.size());
    for (const auto& [k, values] : m.diagonals()) {
        double sum = 0.0;
        for (double v : values) sum += v;
        out.set_diagonal(k, std::vector<double>(values.size(), sum / values.size()));
    }
    return out;
}

std::vector<index_t> tpai_offsets(const std::vector<index_t>& base, int infill) {
    if (infill < 0) throw std::invalid_argument("tpai_offsets: infill must be >= 0");
    std::set<index_t> offsets(base.begin(), base.end());
    for (int level = 0; level < infill; ++level) {
        std::set<index_t> next(offsets);
        for (index_t k : offsets) {
            next.insert(k - 1);
            next.insert(k + 1);
        }
        offsets.swap(next);
    }
    return {offsets.begin(), offsets.end()};
}

std::map<index_t, double> tpai_coefficients(const std::map<index_t, double>& a_hat,
                                            const std::vector<index_t>& p_offsets) {
    const Eigen::Index s = static_cast<Eigen::Index>(p_offsets.size());
    Eigen::MatrixXd sys(s, s);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s);
    for (Eigen::Index i = 0; i < s; ++i) {
        const index_t m = p_offsets[i];
        if (m == 0) rhs[i] = 1.0;
        for (Eigen::Index j = 0; j < s; ++j) {
            const auto it = a_hat.find(m - p_offsets[j]);
            sys(i, j) = it == a_hat.end() ? 0.0 : it->second;
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    double pivot_max = 0.0, pivot_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < s; ++i) {
        const double p = std::fabs(lu.matrixLU()(i, i));
        pivot_max = std::max(pivot_max, p);
        pivot_min = std::min(pivot_min, p);
    }
    if (pivot_max == 0.0 || pivot_min / pivot_max < 1e-14)
        throw std::runtime_error("tpai_coefficients: singular centred system");
    const Eigen::VectorXd p = lu.solve(rhs);
    std::map<index_t, double> out;
    for (Eigen::Index j = 0; j < s; ++j) out[p_offsets[j]] = p[j];
    return out;
}

BandedMatrix tpai(const BandedMatrix& a_scaled, int infill) {
    if (!a_scaled.has_diagonal(0))
        throw std::invalid_argument("tpai: main diagonal not stored");
    for (double v : a_scaled.diagonal(0))
        if (std::fabs(v - 1.0) > 1e-9)
            throw std::invalid_argument("tpai: matrix must be diagonally scaled first");

    const BandedMatrix a_hat_mat = toeplitz_average(a_scaled);
    std::map<index_t, double> a_hat;
    for (const auto& [k, values] : a_hat_mat.diagonals()) a_hat[k] = values.front();

    const std::map<index_t, double> coeffs =
        tpai_coefficients(a_hat, tpai_offsets(a_scaled.offsets(), infill));

    const index_t n = a_scaled.size();
    BandedMatrix p(n);
    for (const auto& [k, value] : coeffs) {
        if (std::llabs(k) >= n) continue;
        p.set_diagonal(k, std::vector<double>(n - std::llabs(k), value));
    }
    return p;
}

}  // namespace qpw
