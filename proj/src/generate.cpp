// SPDX-License-Identifier: Apache-2.0
#include "qpw/generate.hpp"

#include <stdexcept>

#include "qpw/mat_io.hpp"

namespace qpw {

std::string MatrixSource::label() const {
    switch (kind) {
        case SourceKind::Pressure2D: {
            std::string s = "pressure2d";
            for (index_t d : dims) s += "-" + std::to_string(d);
            return s;
        }
        case SourceKind::Laplacian3D: {
            std::string s = "laplacian3d";
            for (index_t d : dims) s += "-" + std::to_string(d);
            return s;
        }
        case SourceKind::MatrixMarketFile:
            return "file:" + path;
    }
    return "unknown";
}

namespace {

void check_dims(const std::vector<index_t>& dims, std::size_t rank) {
    if (dims.size() != rank)
        throw std::invalid_argument("generate: expected " + std::to_string(rank) + " mesh extents");
    for (index_t d : dims)
        if (d < 2) throw std::invalid_argument("generate: mesh extents must be >= 2");
}

}  // namespace

BandedMatrix generate_pressure_2d(index_t nx, index_t ny) {
    check_dims({nx, ny}, 2);
    const index_t n = nx * ny;
    BandedMatrix a(n);
    for (index_t y = 0; y < ny; ++y) {
        for (index_t x = 0; x < nx; ++x) {
            const index_t j = x + nx * y;
            int neighbours = 0;
            if (x > 0) { a.add_at(j, j - 1, -1.0); ++neighbours; }
            if (x < nx - 1) { a.add_at(j, j + 1, -1.0); ++neighbours; }
            if (y > 0) { a.add_at(j, j - nx, -1.0); ++neighbours; }
            if (y < ny - 1) { a.add_at(j, j + nx, -1.0); ++neighbours; }
            a.add_at(j, j, static_cast<double>(neighbours));
        }
    }
    a.add_at(0, 0, 1.0);  // reference cell
    return a;
}

BandedMatrix generate_laplacian_3d(index_t nx, index_t ny, index_t nz) {
    check_dims({nx, ny, nz}, 3);
    const index_t n = nx * ny * nz;
    BandedMatrix a(n);
    const index_t sy = nx;
    const index_t sz = nx * ny;
    for (index_t z = 0; z < nz; ++z) {
        for (index_t y = 0; y < ny; ++y) {
            for (index_t x = 0; x < nx; ++x) {
                const index_t j = x + nx * (y + ny * z);
                int neighbours = 0;
                if (x > 0) { a.add_at(j, j - 1, -1.0); ++neighbours; }
                if (x < nx - 1) { a.add_at(j, j + 1, -1.0); ++neighbours; }
                if (y > 0) { a.add_at(j, j - sy, -1.0); ++neighbours; }
                if (y < ny - 1) { a.add_at(j, j + sy, -1.0); ++neighbours; }
                if (z > 0) { a.add_at(j, j - sz, -1.0); ++neighbours; }
                if (z < nz - 1) { a.add_at(j, j + sz, -1.0); ++neighbours; }
                a.add_at(j, j, static_cast<double>(neighbours));
            }
        }
    }
    a.add_at(0, 0, 1.0);
    return a;
}

BandedMatrix generate_test_matrix(const MatrixSource& source) {
    switch (source.kind) {
        case SourceKind::Pressure2D:
            check_dims(source.dims, 2);
            return generate_pressure_2d(source.dims[0], source.dims[1]);
        case SourceKind::Laplacian3D:
            check_dims(source.dims, 3);
            return generate_laplacian_3d(source.dims[0], source.dims[1], source.dims[2]);
        case SourceKind::MatrixMarketFile:
            return read_matrix_market(source.path);
    }
    throw std::invalid_argument("generate_test_matrix: unknown source kind");
}

}  // namespace qpw
