// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "qpw/banded.hpp"

namespace qpw {

/// Extents of the regular mesh behind a generated matrix. Cells are numbered
/// x fastest: cell (x, y, z) -> index x + nx*y + nx*ny*z.
struct MeshDims {
    std::vector<index_t> extents;  // 2 or 3 entries

    index_t cells() const;
    int rank() const { return static_cast<int>(extents.size()); }
};

/// Infer 2D mesh extents from the offsets of a mesh matrix (offsets
/// {0, +-1, ..., +-nx}); used when a matrix is ingested from file.
MeshDims infer_mesh_dims(const BandedMatrix& a);

/// Sparsity of one matrix row expressed as lattice offsets around a node.
/// 2D offsets use dz = 0.
struct StencilPattern {
    int dims = 2;
    std::vector<std::array<int, 3>> offsets;  // sorted lexicographically (dz, dy, dx)

    bool contains(int dx, int dy, int dz) const;
};

StencilPattern five_point_stencil();
StencilPattern seven_point_stencil();

/// Diamond extension of the 5-point (2D) or 7-point (3D) stencil by `level`
/// nodes per direction: all lattice offsets with Manhattan distance <=
/// 1 + level. Throws for any other base stencil.
StencilPattern infill_pattern(const StencilPattern& base, int level);

/// Stencil one node wider; the sparsity the product of a pattern-supported
/// preconditioner with the base-stencil matrix lands on.
StencilPattern product_pattern(const StencilPattern& pattern);

/// Distinct matrix-diagonal offsets the pattern maps to on a given mesh.
std::vector<index_t> pattern_matrix_offsets(const StencilPattern& pattern, const MeshDims& mesh);

/// Column indices of the pattern row centred on `row`, clipped at the mesh
/// boundary; sorted ascending.
std::vector<index_t> pattern_row_columns(const StencilPattern& pattern, const MeshDims& mesh,
                                         index_t row);

// Diagonal-count formulas for the diamond pattern on 2D meshes, valid once
// the mesh is wide enough that distinct lattice offsets map to distinct
// matrix offsets.
inline index_t spai_pattern_diagonals_2d(int level) {
    return 5 + 2 * static_cast<index_t>(level) * (level + 3);
}
inline index_t spai_product_diagonals_2d(int level) {
    return 5 + 2 * static_cast<index_t>(level + 1) * (level + 4);
}
inline index_t spai_product_nonzero_diagonals_2d(int level) {
    return 9 + 4 * static_cast<index_t>(level);
}

/// Per-row column membership mask used for sparsity-constrained solves and
/// numerical dropping.
class PatternMask {
public:
    static PatternMask from_stencil(const StencilPattern& pattern, const MeshDims& mesh);

    /// Mask of the stored entries of a matrix with |value| > tol.
    static PatternMask from_matrix(const BandedMatrix& a, double tol = 0.0);

    /// Every (row, col) pair allowed.
    static PatternMask full(index_t n);

    bool contains(index_t row, index_t col) const;
    std::vector<index_t> row_columns(index_t row) const;
    index_t size() const { return n_; }

private:
    index_t n_ = 0;
    bool full_ = false;
    // offset -> column-order membership flags (same indexing as BandedMatrix)
    std::map<index_t, std::vector<char>> present_;
};

}  // namespace qpw
