// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qpw/banded.hpp"

namespace qpw {

enum class SpectrumMethod { Direct, Iterative };

struct Spectrum {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double kappa = 0.0;  // sigma_max / sigma_min
    SpectrumMethod method = SpectrumMethod::Direct;
    double tol = 0.0;
};

/// Extremal singular values. Direct uses a dense SVD; Iterative runs power
/// iteration on A^T A for sigma_max and inverse iteration through a sparse LU
/// of A for sigma_min, converging the Rayleigh quotient to the relative
/// tolerance. Throws when the matrix is numerically singular or the iteration
/// fails to converge.
Spectrum spectral_metrics(const BandedMatrix& m, double tol = 1e-10,
                          SpectrumMethod method = SpectrumMethod::Direct);

Spectrum spectral_metrics_dense(const Eigen::MatrixXd& m, double tol = 1e-10);

/// Subnormalised condition number s / sigma_min. Note this is not s * kappa
/// in general: the encoded matrix's largest singular value is s-independent.
double kappa_sub(double s, double sigma_min);

}  // namespace qpw
