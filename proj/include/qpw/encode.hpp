// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>

#include "qpw/circuit.hpp"
#include "qpw/clai.hpp"

namespace qpw {

/// Block encoding of an n x n Toeplitz matrix given its constant diagonal
/// values keyed by offset (row - col). The circuit is prep -> multiplexed
/// shifts -> global shift -> unprep, with the diagonal weights carried by the
/// prep pair (signs folded into unprep) and an extra range qubit doubling the
/// shift register so wraparound lands outside the encoded n x n block.
/// Subnormalisation is the sum of absolute diagonal values.
BlockEncoding encode_toeplitz(const std::map<index_t, double>& diagonals, index_t n);

/// Block encoding of a banded matrix: each diagonal is normalised to unit max
/// and loaded by multiplexed Ry rotations (angle 2*arcsin(value), trailing X)
/// on the data qubit, with one controlled shift per diagonal; the prep pair
/// carries the per-diagonal maxima. Subnormalisation is the sum of the maxima
/// times extra_scale (the upstream max-norm factor r). All entries must lie
/// in [-1, 1]; n must be a power of two. Zero entries get no rotation, so no
/// wraparound contamination occurs.
BlockEncoding encode_banded(const BandedMatrix& a, double extra_scale = 1.0);

/// Composes enc_a with the inverse-circulant factor F^dag Lambda^{-1} F (the
/// exact inverse of C = F^dag diag(Lambda) F): transform, diagonal-encode the
/// scaled inverse spectrum on a fresh data qubit, transform back.
/// Subnormalisation multiplies by max_k |1/Lambda_k|; the transforms add
/// none.
BlockEncoding encode_clai_product(const CirculantSpectrum& spectrum, const BlockEncoding& enc_a);

/// Block encoding of P*A from the encodings of the factors: apply U_A, then
/// U_P with its ancillas relabelled above U_A's. Subnormalisation multiplies
/// and gate counts add.
BlockEncoding multiply_encodings(const BlockEncoding& u_p, const BlockEncoding& u_a);

}  // namespace qpw
