// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Sparse>

#include "qpw/banded.hpp"

namespace qpw {

Eigen::SparseMatrix<double> to_sparse(const BandedMatrix& m);

/// Direct sparse solve of A x = b. Throws on a singular factorisation.
Eigen::VectorXd sparse_solve(const BandedMatrix& a, const Eigen::VectorXd& b);

/// y = A x using the banded storage.
Eigen::VectorXd banded_apply(const BandedMatrix& a, const Eigen::VectorXd& x);

/// y = A^T x using the banded storage.
Eigen::VectorXd banded_apply_transpose(const BandedMatrix& a, const Eigen::VectorXd& x);

}  // namespace qpw
