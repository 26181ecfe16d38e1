// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include "qpw/banded.hpp"

namespace qpw {

/// Eigenvalues of the circulant average of a matrix under the DFT convention
/// F[j,k] = w^{jk}/sqrt(N), w = e^{-2 pi i/N}: Lambda_k = diag(F A F^dag)_k.
/// For real input Lambda is conjugate-symmetric.
struct CirculantSpectrum {
    std::vector<std::complex<double>> lambda;

    index_t size() const { return static_cast<index_t>(lambda.size()); }
    double min_abs() const;
    double max_abs() const;
};

/// First column of the circulant average C(A): c_m is the mean of all entries
/// with (row - col) mod n == m.
std::vector<double> circulant_first_column(const BandedMatrix& a);

/// Lambda_k = (1/n) sum_{p,q} w^{(p-q)k} A_{p,q}, computed by folding the
/// diagonals into the wrapped first column and applying one FFT.
CirculantSpectrum clai_spectrum(const BandedMatrix& a);

/// Dense circulant C = F^dag diag(Lambda) F recovered from the spectrum.
Eigen::MatrixXcd circulant_dense(const CirculantSpectrum& spectrum);

/// Dense product C^{-1} A via FFTs, for classical baseline measurements.
/// Requires min |Lambda_k| > 0 and n <= 4096.
Eigen::MatrixXd clai_apply(const CirculantSpectrum& spectrum, const BandedMatrix& a);

}  // namespace qpw
