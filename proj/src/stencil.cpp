// SPDX-License-Identifier: Apache-2.0
#include "qpw/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace qpw {

index_t MeshDims::cells() const {
    index_t total = 1;
    for (index_t e : extents) total *= e;
    return total;
}

MeshDims infer_mesh_dims(const BandedMatrix& a) {
    // Mesh matrices carry offsets {0, +-1, +-nx[, +-nx*ny]}; the smallest
    // offset > 1 is the line stride.
    std::vector<index_t> strides;
    for (index_t k : a.offsets())
        if (k > 1) strides.push_back(k);
    if (strides.empty())
        throw std::invalid_argument("infer_mesh_dims: no line-stride offset found");
    const index_t nx = strides.front();
    if (strides.size() == 1) {
        if (a.size() % nx != 0)
            throw std::invalid_argument("infer_mesh_dims: size not divisible by stride");
        return MeshDims{{nx, a.size() / nx}};
    }
    const index_t nxny = strides[1];
    if (strides.size() > 2 || nxny % nx != 0 || a.size() % nxny != 0)
        throw std::invalid_argument("infer_mesh_dims: offsets do not match a 3D mesh");
    return MeshDims{{nx, nxny / nx, a.size() / nxny}};
}

bool StencilPattern::contains(int dx, int dy, int dz) const {
    return std::binary_search(offsets.begin(), offsets.end(), std::array<int, 3>{dz, dy, dx});
}

namespace {

StencilPattern diamond(int dims, int radius) {
    StencilPattern p;
    p.dims = dims;
    const int zr = dims == 3 ? radius : 0;
    for (int dz = -zr; dz <= zr; ++dz)
        for (int dy = -(radius - std::abs(dz)); dy <= radius - std::abs(dz); ++dy)
            for (int dx = -(radius - std::abs(dz) - std::abs(dy));
                 dx <= radius - std::abs(dz) - std::abs(dy); ++dx)
                p.offsets.push_back({dz, dy, dx});
    std::sort(p.offsets.begin(), p.offsets.end());
    return p;
}

int diamond_radius(const StencilPattern& p) {
    // Returns r if p is exactly the Manhattan ball of radius r, else -1.
    int r = 0;
    for (const auto& o : p.offsets) r = std::max(r, std::abs(o[0]) + std::abs(o[1]) + std::abs(o[2]));
    const StencilPattern ball = diamond(p.dims, r);
    if (ball.offsets == p.offsets) return r;
    return -1;
}

}  // namespace

StencilPattern five_point_stencil() { return diamond(2, 1); }
StencilPattern seven_point_stencil() { return diamond(3, 1); }

StencilPattern infill_pattern(const StencilPattern& base, int level) {
    if (level < 0) throw std::invalid_argument("infill_pattern: level must be >= 0");
    if (base.dims != 2 && base.dims != 3)
        throw std::invalid_argument("infill_pattern: unsupported dimensionality");
    if (diamond_radius(base) != 1)
        throw std::invalid_argument("infill_pattern: base must be the 5-point or 7-point stencil");
    return diamond(base.dims, 1 + level);
}

StencilPattern product_pattern(const StencilPattern& pattern) {
    const int r = diamond_radius(pattern);
    if (r < 0) throw std::invalid_argument("product_pattern: pattern is not a diamond");
    return diamond(pattern.dims, r + 1);
}

namespace {

struct MeshCoords {
    index_t nx = 1, ny = 1, nz = 1;

    explicit MeshCoords(const MeshDims& mesh) {
        if (mesh.rank() != 2 && mesh.rank() != 3)
            throw std::invalid_argument("mesh must be 2D or 3D");
        nx = mesh.extents[0];
        ny = mesh.extents[1];
        nz = mesh.rank() == 3 ? mesh.extents[2] : 1;
    }

    index_t index(index_t x, index_t y, index_t z) const { return x + nx * (y + ny * z); }
};

}  // namespace

std::vector<index_t> pattern_matrix_offsets(const StencilPattern& pattern, const MeshDims& mesh) {
    if (pattern.dims != mesh.rank())
        throw std::invalid_argument("pattern_matrix_offsets: dimensionality mismatch");
    const MeshCoords mc(mesh);
    std::set<index_t> out;
    for (const auto& o : pattern.offsets)
        out.insert(-(o[2] + mc.nx * (static_cast<index_t>(o[1]) + mc.ny * o[0])));
    return {out.begin(), out.end()};
}

std::vector<index_t> pattern_row_columns(const StencilPattern& pattern, const MeshDims& mesh,
                                         index_t row) {
    if (pattern.dims != mesh.rank())
        throw std::invalid_argument("pattern_row_columns: dimensionality mismatch");
    const MeshCoords mc(mesh);
    const index_t x = row % mc.nx;
    const index_t y = (row / mc.nx) % mc.ny;
    const index_t z = row / (mc.nx * mc.ny);
    std::vector<index_t> cols;
    cols.reserve(pattern.offsets.size());
    for (const auto& o : pattern.offsets) {
        const index_t cx = x + o[2];
        const index_t cy = y + o[1];
        const index_t cz = z + o[0];
        if (cx < 0 || cx >= mc.nx || cy < 0 || cy >= mc.ny || cz < 0 || cz >= mc.nz) continue;
        cols.push_back(mc.index(cx, cy, cz));
    }
    std::sort(cols.begin(), cols.end());
    return cols;
}

PatternMask PatternMask::from_stencil(const StencilPattern& pattern, const MeshDims& mesh) {
    PatternMask mask;
    mask.n_ = mesh.cells();
    for (index_t row = 0; row < mask.n_; ++row) {
        for (index_t col : pattern_row_columns(pattern, mesh, row)) {
            const index_t k = row - col;
            auto it = mask.present_.find(k);
            if (it == mask.present_.end())
                it = mask.present_.emplace(k, std::vector<char>(mask.n_ - std::llabs(k), 0)).first;
            it->second[diag_index(k, row, col)] = 1;
        }
    }
    return mask;
}

PatternMask PatternMask::from_matrix(const BandedMatrix& a, double tol) {
    PatternMask mask;
    mask.n_ = a.size();
    for (const auto& [k, values] : a.diagonals()) {
        std::vector<char> flags(values.size(), 0);
        bool any = false;
        for (std::size_t t = 0; t < values.size(); ++t) {
            if (std::fabs(values[t]) > tol) {
                flags[t] = 1;
                any = true;
            }
        }
        if (any) mask.present_.emplace(k, std::move(flags));
    }
    return mask;
}

PatternMask PatternMask::full(index_t n) {
    PatternMask mask;
    mask.n_ = n;
    mask.full_ = true;
    return mask;
}

bool PatternMask::contains(index_t row, index_t col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_) return false;
    if (full_) return true;
    auto it = present_.find(row - col);
    if (it == present_.end()) return false;
    return it->second[diag_index(row - col, row, col)] != 0;
}

std::vector<index_t> PatternMask::row_columns(index_t row) const {
    std::vector<index_t> cols;
    if (full_) {
        cols.resize(n_);
        for (index_t c = 0; c < n_; ++c) cols[c] = c;
        return cols;
    }
    for (const auto& [k, flags] : present_) {
        const index_t col = row - k;
        if (col < 0 || col >= n_) continue;
        if (k >= 0 && row < k) continue;
        if (k < 0 && row >= n_ + k) continue;
        if (flags[diag_index(k, row, col)]) cols.push_back(col);
    }
    std::sort(cols.begin(), cols.end());
    return cols;
}

}  // namespace qpw
