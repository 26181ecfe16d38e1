// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qpw/banded.hpp"
#include "qpw/stencil.hpp"

namespace qpw {

enum class SpaiSide {
    Left,   // rows of P solve m_j A_j = e_j; P premultiplies as PA
    Right,  // columns of M solve A_j m_j = e_j; M postmultiplies as AM
};

/// Sparse approximate inverse by independent exact solves of the reduced
/// systems: for each row j (left form), gather the pattern columns S_j, take
/// the square submatrix A[S_j, S_j] and solve the unit-row system by LU. The
/// pattern-restricted residual rows of PA - I are zero to machine precision.
/// Throws when a reduced system is singular (reciprocal pivot ratio below
/// 1e-14), reporting the row. Rows are independent; `threads` > 1 solves them
/// in parallel with deterministic assembly.
BandedMatrix spai_column(const BandedMatrix& a, const PatternMask& pattern,
                         SpaiSide side = SpaiSide::Left, int threads = 1);

/// Same with the pattern derived from the mesh stencil at the given infill
/// level (diamond of radius 1 + infill).
BandedMatrix spai_column(const BandedMatrix& a, const MeshDims& mesh, int infill,
                         SpaiSide side = SpaiSide::Left, int threads = 1);

enum class SpaiDropOn { Update, Residual };  // drop entries of M_k or of G_k

/// Global minimal-residual descent for min ||I - A M||_F starting from
/// M_0 = alpha_0 A^T with alpha_0 = ||A||_F / ||A A^T||_F, iterating
///   G_k = I - A M_k,
///   alpha_k = tr(G_k^T A G_k) / ||A G_k||_F^2,
///   M_{k+1} = M_k + alpha_k G_k,
/// with numerical dropping outside `pattern` after each update (pass null for
/// no dropping). A stationary point (||A G_k||_F = 0) terminates early.
BandedMatrix spai_iterative(const BandedMatrix& a, int k_max,
                            const PatternMask* pattern = nullptr,
                            SpaiDropOn drop_on = SpaiDropOn::Update);

/// Frobenius norm of I - A*M; the quantity the iteration descends.
double spai_residual_norm(const BandedMatrix& a, const BandedMatrix& m);

}  // namespace qpw
