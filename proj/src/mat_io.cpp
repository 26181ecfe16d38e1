// SPDX-License-Identifier: Apache-2.0
#include "qpw/mat_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qpw {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error("matrix market: " + what);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

BandedMatrix read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail("empty file");
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") fail("missing %%MatrixMarket banner");
    if (lower(object) != "matrix" || lower(format) != "coordinate")
        fail("only coordinate matrices are supported");
    if (lower(field) != "real") fail("only real-valued files are supported");
    const std::string sym = lower(symmetry);
    if (sym != "general" && sym != "symmetric")
        fail("only general or symmetric files are supported");

    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream sizes(line);
    index_t rows = 0, cols = 0, nnz = 0;
    if (!(sizes >> rows >> cols >> nnz)) fail("malformed size line");
    if (rows != cols) fail("matrix must be square");
    if (rows <= 0) fail("non-positive dimension");

    BandedMatrix m(rows);
    index_t seen = 0;
    while (seen < nnz) {
        if (!std::getline(in, line)) fail("unexpected end of file");
        if (line.empty() || line[0] == '%') continue;
        std::istringstream entry(line);
        index_t i = 0, j = 0;
        double v = 0.0;
        if (!(entry >> i >> j >> v)) fail("malformed entry line: " + line);
        if (i < 1 || i > rows || j < 1 || j > cols) fail("index out of range: " + line);
        m.add_at(i - 1, j - 1, v);
        if (sym == "symmetric" && i != j) m.add_at(j - 1, i - 1, v);
        ++seen;
    }
    return m;
}

BandedMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("matrix market: cannot open " + path);
    return read_matrix_market(in);
}

void write_matrix_market(const BandedMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    const index_t n = m.size();
    std::vector<std::tuple<index_t, index_t, double>> entries;
    entries.reserve(static_cast<std::size_t>(m.nonzero_count()));
    for (const auto& [k, values] : m.diagonals()) {
        const index_t len = n - std::llabs(k);
        for (index_t t = 0; t < len; ++t) {
            if (values[t] == 0.0) continue;
            const index_t row = k >= 0 ? t + k : t;
            const index_t col = k >= 0 ? t : t - k;
            entries.emplace_back(row, col, values[t]);
        }
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        return std::get<0>(a) < std::get<0>(b);
    });
    out << n << " " << n << " " << entries.size() << "\n";
    for (const auto& [row, col, v] : entries)
        out << row + 1 << " " << col + 1 << " " << format_double(v) << "\n";
}

void write_matrix_market(const BandedMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("matrix market: cannot open " + path + " for writing");
    write_matrix_market(m, out);
}

void write_matrix_market_array(const Eigen::MatrixXd& m, std::ostream& out) {
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << " " << m.cols() << "\n";
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) out << format_double(m(r, c)) << "\n";
}

nlohmann::json banded_to_json(const BandedMatrix& m) {
    nlohmann::json diags = nlohmann::json::array();
    for (const auto& [k, values] : m.diagonals())
        diags.push_back({{"offset", k}, {"values", values}});
    return {{"n", m.size()}, {"diagonals", diags}};
}

BandedMatrix banded_from_json(const nlohmann::json& j) {
    BandedMatrix m(j.at("n").get<index_t>());
    for (const auto& d : j.at("diagonals"))
        m.set_diagonal(d.at("offset").get<index_t>(), d.at("values").get<std::vector<double>>());
    return m;
}

void write_banded_json(const BandedMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << banded_to_json(m).dump(2) << "\n";
}

BandedMatrix read_banded_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return banded_from_json(j);
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

BandedMatrix read_matrix_any(const std::string& path) {
    if (ends_with(path, ".json")) return read_banded_json(path);
    return read_matrix_market(path);
}

void write_matrix_any(const BandedMatrix& m, const std::string& path) {
    if (ends_with(path, ".json")) {
        write_banded_json(m, path);
    } else {
        write_matrix_market(m, path);
    }
}

}  // namespace qpw
