// SPDX-License-Identifier: Apache-2.0
#include "qpw/clai.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fft_util.hpp"

namespace qpw {

double CirculantSpectrum::min_abs() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& l : lambda) m = std::min(m, std::abs(l));
    return m;
}

double CirculantSpectrum::max_abs() const {
    double m = 0.0;
    for (const auto& l : lambda) m = std::max(m, std::abs(l));
    return m;
}

std::vector<double> circulant_first_column(const BandedMatrix& a) {
    const index_t n = a.size();
    std::vector<double> c(n, 0.0);
    for (const auto& [k, values] : a.diagonals()) {
        double sum = 0.0;
        for (double v : values) sum += v;
        const index_t m = ((k % n) + n) % n;
        c[m] += sum / static_cast<double>(n);
    }
    return c;
}

CirculantSpectrum clai_spectrum(const BandedMatrix& a) {
    const std::vector<double> c = circulant_first_column(a);
    CirculantSpectrum s;
    s.lambda.assign(c.begin(), c.end());
    detail::dft_inplace(s.lambda.data(), s.lambda.size(), -1);
    return s;
}

Eigen::MatrixXcd circulant_dense(const CirculantSpectrum& spectrum) {
    const index_t n = spectrum.size();
    std::vector<std::complex<double>> col(spectrum.lambda);
    detail::dft_inplace(col.data(), col.size(), +1);
    for (auto& v : col) v /= static_cast<double>(n);
    Eigen::MatrixXcd c(n, n);
    for (index_t q = 0; q < n; ++q)
        for (index_t p = 0; p < n; ++p) c(p, q) = col[((p - q) % n + n) % n];
    return c;
}

Eigen::MatrixXd clai_apply(const CirculantSpectrum& spectrum, const BandedMatrix& a) {
    const index_t n = a.size();
    if (spectrum.size() != n) throw std::invalid_argument("clai_apply: dimension mismatch");
    if (n > 4096)
        throw std::invalid_argument("clai_apply: dense products are limited to n <= 4096");
    if (spectrum.min_abs() == 0.0) throw std::runtime_error("clai_apply: zero eigenvalue");

    Eigen::MatrixXd out(n, n);
    std::vector<std::complex<double>> buf(n);
    for (index_t col = 0; col < n; ++col) {
        std::fill(buf.begin(), buf.end(), std::complex<double>{0.0, 0.0});
        for (const auto& [k, values] : a.diagonals()) {
            const index_t row = col + k;
            if (row < 0 || row >= n) continue;
            buf[row] = values[diag_index(k, row, col)];
        }
        // C^{-1} x = F^dag (Lambda^{-1} . (F x)); the two 1/sqrt(n) factors
        // combine into one 1/n.
        detail::dft_inplace(buf.data(), buf.size(), -1);
        for (index_t k = 0; k < n; ++k) buf[k] /= spectrum.lambda[k];
        detail::dft_inplace(buf.data(), buf.size(), +1);
        for (index_t row = 0; row < n; ++row) out(row, col) = buf[row].real() / static_cast<double>(n);
    }
    return out;
}

}  // namespace qpw
