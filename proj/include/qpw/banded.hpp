// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace qpw {

using index_t = std::int64_t;

/// Square matrix stored as a set of banded diagonals.
///
/// Diagonals are keyed by their offset k = row - col, so positive offsets are
/// sub-diagonals, negative offsets are super-diagonals and 0 is the main
/// diagonal. The value vector of offset k has length n - |k| and is stored in
/// column order: index t holds A(t+k, t) for k >= 0 and A(t, t+|k|) for k < 0.
///
/// Stored diagonals may contain zeros (structural zeros are common for mesh
/// matrices at line breaks); a diagonal that is zero everywhere is usually
/// removed with drop_zero_diagonals before encoding.
class BandedMatrix {
public:
    BandedMatrix() = default;
    explicit BandedMatrix(index_t n);

    index_t size() const { return n_; }
    index_t diagonal_count() const { return static_cast<index_t>(diagonals_.size()); }

    const std::map<index_t, std::vector<double>>& diagonals() const { return diagonals_; }

    bool has_diagonal(index_t offset) const;

    /// Stored values of a diagonal; throws std::out_of_range if absent.
    const std::vector<double>& diagonal(index_t offset) const;

    /// Replace (or create) a diagonal. Length must be n - |offset|.
    void set_diagonal(index_t offset, std::vector<double> values);

    /// Create a zero-filled diagonal if absent and return it for writing.
    std::vector<double>& ensure_diagonal(index_t offset);

    void remove_diagonal(index_t offset) { diagonals_.erase(offset); }

    /// Entry A(row, col); 0.0 when the diagonal is not stored.
    double at(index_t row, index_t col) const;

    /// Accumulate into A(row, col), creating the diagonal on demand.
    void add_at(index_t row, index_t col, double value);

    /// Sorted list of stored offsets.
    std::vector<index_t> offsets() const;

    double max_abs() const;

    index_t nonzero_count(double tol = 0.0) const;

    Eigen::MatrixXd dense() const;

    /// Banded view of a dense matrix; entries with |a_ij| <= tol are skipped
    /// and diagonals that end up empty are not stored.
    static BandedMatrix from_dense(const Eigen::MatrixXd& a, double tol = 0.0);

    static BandedMatrix identity(index_t n);

private:
    index_t n_ = 0;
    std::map<index_t, std::vector<double>> diagonals_;
};

/// Column-order storage index of entry (row, col) on diagonal row - col.
inline index_t diag_index(index_t offset, index_t row, index_t col) {
    return offset >= 0 ? col : row;
}

struct DiagonalScaleResult {
    BandedMatrix scaled;  // D^{-1} A, unit main diagonal
    BandedMatrix d;       // the diagonal matrix D
};

/// Row scaling by the inverse of the main diagonal. The solution vector of a
/// linear system is unchanged by this transformation. Throws on a zero
/// diagonal entry.
DiagonalScaleResult diagonal_scale(const BandedMatrix& a);

struct MaxNormScaleResult {
    BandedMatrix scaled;  // A / r, max |entry| == 1
    double r = 1.0;       // fold into downstream subnormalisation
};

MaxNormScaleResult max_norm_scale(const BandedMatrix& a);

/// Exact banded product P*A in O(n * d_P * d_A). The result keeps every
/// structurally produced diagonal, including ones that are numerically zero.
BandedMatrix banded_multiply(const BandedMatrix& p, const BandedMatrix& a);

struct DropZeroResult {
    BandedMatrix matrix;
    index_t removed = 0;
};

/// Remove diagonals whose max |entry| <= tol.
DropZeroResult drop_zero_diagonals(const BandedMatrix& m, double tol);

/// Default tolerance for drop_zero_diagonals: 1e-12 * max |entry|.
double default_drop_tolerance(const BandedMatrix& m);

bool is_power_of_two(index_t n);

/// Extend to the next power-of-two size with identity rows/columns.
BandedMatrix pad_to_power_of_two(const BandedMatrix& m);

}  // namespace qpw
