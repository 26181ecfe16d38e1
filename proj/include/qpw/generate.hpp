// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "qpw/banded.hpp"
#include "qpw/stencil.hpp"

namespace qpw {

enum class SourceKind { Pressure2D, Laplacian3D, MatrixMarketFile };

struct MatrixSource {
    SourceKind kind = SourceKind::Pressure2D;
    std::vector<index_t> dims;  // mesh extents for generated kinds
    std::string path;           // MatrixMarketFile only

    MeshDims mesh() const { return MeshDims{dims}; }
    std::string label() const;
};

/// Mass-conservation matrix of the 5-point stencil on an nx-by-ny mesh:
/// off-diagonals -1 toward each in-mesh neighbour, diagonal equal to the
/// neighbour count (so every row sums to zero), plus +1 on the diagonal of
/// cell (0,0) as the reference closure that makes the matrix nonsingular.
BandedMatrix generate_pressure_2d(index_t nx, index_t ny);

/// 7-point analogue on an nx-by-ny-by-nz mesh.
BandedMatrix generate_laplacian_3d(index_t nx, index_t ny, index_t nz);

/// Dispatch on source kind; file sources load through read_matrix_market.
BandedMatrix generate_test_matrix(const MatrixSource& source);

}  // namespace qpw
