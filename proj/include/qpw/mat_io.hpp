// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qpw/banded.hpp"

namespace qpw {

/// Read a Matrix Market coordinate file (real, general or symmetric; the
/// symmetric lower triangle is expanded). Throws std::runtime_error on a
/// malformed header, out-of-range indices or non-real fields.
BandedMatrix read_matrix_market(const std::string& path);
BandedMatrix read_matrix_market(std::istream& in);

/// Write in coordinate/real/general form; exact zeros are skipped.
void write_matrix_market(const BandedMatrix& m, const std::string& path);
void write_matrix_market(const BandedMatrix& m, std::ostream& out);

/// Dense dump in array/real/general form (column major).
void write_matrix_market_array(const Eigen::MatrixXd& m, std::ostream& out);

nlohmann::json banded_to_json(const BandedMatrix& m);
BandedMatrix banded_from_json(const nlohmann::json& j);

void write_banded_json(const BandedMatrix& m, const std::string& path);
BandedMatrix read_banded_json(const std::string& path);

/// Load either format, keyed on the file extension (.mtx/.mm vs .json).
BandedMatrix read_matrix_any(const std::string& path);
void write_matrix_any(const BandedMatrix& m, const std::string& path);

}  // namespace qpw
