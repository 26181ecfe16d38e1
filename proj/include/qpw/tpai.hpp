// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>

#include "qpw/banded.hpp"

namespace qpw {

/// Toeplitz approximation: replace every stored diagonal by its arithmetic
/// mean (structural zeros included).
BandedMatrix toeplitz_average(const BandedMatrix& m);

/// Offsets of the Toeplitz approximate inverse at the given infill level:
/// each level adds one new diagonal adjacent to both sides of every band of
/// the base offsets.
std::vector<index_t> tpai_offsets(const std::vector<index_t>& base, int infill);

/// Coefficients of the Toeplitz approximate inverse: solve the centred row
/// system of the infinite Toeplitz operator, sum_k p_k a_{m-k} = delta_{m,0}
/// for m ranging over the preconditioner offsets, by LU. Throws when the
/// centred system is singular.
std::map<index_t, double> tpai_coefficients(const std::map<index_t, double>& a_hat,
                                            const std::vector<index_t>& p_offsets);

/// Toeplitz approximate inverse of a diagonally scaled matrix (unit main
/// diagonal required): Toeplitz-average, extend the offsets by `infill`
/// levels, solve the centred system and expand to full diagonals.
BandedMatrix tpai(const BandedMatrix& a_scaled, int infill);

}  // namespace qpw
