// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "qpw/emulate.hpp"
#include "qpw/encode.hpp"
#include "qpw/generate.hpp"
#include "qpw/spai.hpp"

using namespace qpw;

namespace {

StateVector random_state(int qubits, std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    StateVector s = StateVector::basis(qubits, 0);
    for (auto& a : s.amplitudes) a = {dist(rng), dist(rng)};
    const double norm = s.norm();
    for (auto& a : s.amplitudes) a /= norm;
    return s;
}

}  // namespace

TEST_CASE("empty circuit leaves the state unchanged") {
    std::mt19937 rng(2);
    StateVector s = random_state(4, rng);
    const StateVector copy = s;
    CircuitIR empty;
    empty.qubits = 4;
    apply_circuit(empty, s);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        CHECK(s.amplitudes[i] == copy.amplitudes[i]);
}

TEST_CASE("Ry(pi) maps |0> to |1>") {
    StateVector s = StateVector::basis(1, 0);
    CircuitIR c;
    c.qubits = 1;
    c.gates.emplace_back(MultiplexedRy{0, {}, M_PI, 0});
    apply_circuit(c, s);
    CHECK(std::abs(s.amplitudes[0]) < 1e-15);
    CHECK(std::abs(s.amplitudes[1] - 1.0) < 1e-15);
}

TEST_CASE("controlled rotation touches only matching branches") {
    StateVector s = StateVector::basis(2, 0);  // |q1 q0> = |00>
    CircuitIR c;
    c.qubits = 2;
    c.gates.emplace_back(MultiplexedRy{0, {{1, 1}}, M_PI, 0});
    apply_circuit(c, s);
    CHECK(std::abs(s.amplitudes[0] - 1.0) < 1e-15);  // control bit 0: untouched
}

TEST_CASE("QFT then inverse QFT is the identity") {
    std::mt19937 rng(5);
    StateVector s = random_state(5, rng);
    const StateVector copy = s;
    CircuitIR c;
    c.qubits = 5;
    c.gates.emplace_back(QftBlock{{0, 1, 2}, false});
    c.gates.emplace_back(QftBlock{{0, 1, 2}, true});
    apply_circuit(c, s);
    double err = 0.0;
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        err = std::max(err, std::abs(s.amplitudes[i] - copy.amplitudes[i]));
    CHECK(err < 1e-12);
}

TEST_CASE("controlled add permutes register values modulo 2^m") {
    StateVector s = StateVector::basis(3, 0b101);  // reg {0,1} holds 1, control q2 = 1
    CircuitIR c;
    c.qubits = 3;
    c.gates.emplace_back(ControlledAdd{{0, 1}, 3, {{2, 1}}});
    apply_circuit(c, s);
    // 1 + 3 mod 4 = 0 -> state |q2=1, reg=0> = index 0b100
    CHECK(std::abs(s.amplitudes[0b100] - 1.0) < 1e-15);
}

TEST_CASE("prep load maps |0> to the amplitude vector and back") {
    const std::vector<double> w = {0.5, -0.5, 0.5, 0.5};
    StateVector s = StateVector::basis(2, 0);
    CircuitIR c;
    c.qubits = 2;
    c.gates.emplace_back(PrepLoad{{0, 1}, w});
    apply_circuit(c, s);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s.amplitudes[i] - w[i]) < 1e-14);
    apply_circuit(c, s);  // involution
    CHECK(std::abs(s.amplitudes[0] - 1.0) < 1e-14);
}

TEST_CASE("unitarity: random circuits preserve the norm") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    for (int trial = 0; trial < 10; ++trial) {
        CircuitIR c;
        c.qubits = 6;
        c.gates.emplace_back(MultiplexedRy{0, {{3, 1}}, angle(rng), 0});
        c.gates.emplace_back(MultiplexedPhase{1, {{0, 1}, {4, 0}}, angle(rng)});
        c.gates.emplace_back(ControlledAdd{{0, 1, 2}, 5, {{5, 1}}});
        c.gates.emplace_back(QftBlock{{2, 3, 4}, trial % 2 == 0});
        c.gates.emplace_back(PauliX{5});
        c.gates.emplace_back(PrepLoad{{4, 5}, {0.5, -0.5, 0.5, 0.5}});
        c.gates.emplace_back(MultiplexedRy{2, {{0, 0}, {1, 1}}, angle(rng), 1});
        StateVector s = random_state(6, rng);
        apply_circuit(c, s);
        CHECK(std::fabs(s.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("errors: bad qubit index and qubit guard") {
    CircuitIR c;
    c.qubits = 2;
    c.gates.emplace_back(PauliX{5});
    StateVector s = StateVector::basis(2, 0);
    CHECK_THROWS_AS(apply_circuit(c, s), std::out_of_range);

    BlockEncoding enc;
    enc.circuit.qubits = 40;  // above any sane guard; must throw before allocating
    enc.layout.j = {0, 1};
    CHECK_THROWS_AS(extract_block(enc), std::runtime_error);
}

TEST_CASE("extract_block of the identity encoding is exact") {
    const BlockEncoding enc = encode_banded(BandedMatrix::identity(8));
    const Eigen::MatrixXcd block = extract_block(enc);
    CHECK((block - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("toeplitz wraparound stays outside the encoded block") {
    const std::map<index_t, double> t = {{0, 1.0}, {1, -0.25}, {-1, -0.25}, {4, -0.25}, {-4, -0.25}};
    const BlockEncoding enc = encode_toeplitz(t, 16);

    // widen the system register to include the range qubit: the full 32x32
    // embedding shows the wrapped diagonals
    BlockEncoding embedding = enc;
    embedding.layout.j.push_back(enc.layout.del);
    embedding.layout.del = -1;
    const Eigen::MatrixXcd full = extract_block(embedding);

    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(16, 16);
    for (index_t r = 0; r < 16; ++r)
        for (index_t c = 0; c < 16; ++c) {
            const auto it = t.find(r - c);
            if (it != t.end()) target(r, c) = it->second;
        }
    const Eigen::MatrixXcd top_left = full.topLeftCorner(16, 16);
    CHECK((enc.subnorm * top_left - target.cast<std::complex<double>>()).cwiseAbs().maxCoeff() <
          1e-10);

    double outside = 0.0;
    for (index_t r = 0; r < 32; ++r)
        for (index_t c = 0; c < 32; ++c)
            if (r >= 16 || c >= 16) outside = std::max(outside, std::abs(full(r, c)));
    CHECK(outside > 0.01);  // contamination exists, but not in the block
}

TEST_CASE("verify_encoding") {
    const BandedMatrix a = diagonal_scale(generate_pressure_2d(4, 4)).scaled;
    const BlockEncoding enc = encode_banded(a);

    SUBCASE("well-formed encoding passes at 1e-9") {
        const VerificationReport report = verify_encoding(enc, a, 1e-9);
        CHECK(report.passed);
        CHECK(report.max_abs_err < 1e-9);
        CHECK(report.n == 16);
        CHECK(report.qubits == enc.circuit.qubits);
        CHECK(report.gate_count == static_cast<index_t>(enc.circuit.gates.size()));
    }
    SUBCASE("a corrupted angle is caught and localised") {
        BlockEncoding bad = enc;
        for (Gate& g : bad.circuit.gates) {
            if (auto* ry = std::get_if<MultiplexedRy>(&g)) {
                ry->angle += 0.05;
                break;
            }
        }
        const VerificationReport report = verify_encoding(bad, a, 1e-9);
        CHECK_FALSE(report.passed);
        CHECK(report.max_abs_err > 1e-3);
        CHECK(report.max_abs_err < 0.3);  // a single corrupted entry, not global damage
    }
}

TEST_CASE("quantum product of 8x8 encodings verifies against the dense product") {
    const BandedMatrix a = diagonal_scale(generate_pressure_2d(4, 2)).scaled;
    const BandedMatrix p_raw = spai_column(a, MeshDims{{4, 2}}, 0);
    const MaxNormScaleResult ps = max_norm_scale(p_raw);
    const BlockEncoding prod =
        multiply_encodings(encode_banded(ps.scaled, ps.r), encode_banded(a));
    const VerificationReport report =
        verify_encoding_dense(prod, p_raw.dense() * a.dense(), 1e-9);
    CHECK(report.passed);
}

TEST_CASE("threaded extraction matches sequential") {
    const BandedMatrix a = diagonal_scale(generate_pressure_2d(4, 4)).scaled;
    const BlockEncoding enc = encode_banded(a);
    const Eigen::MatrixXcd b1 = extract_block(enc, 1);
    const Eigen::MatrixXcd b4 = extract_block(enc, 4);
    CHECK((b1 - b4).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("32x32-mesh product encoding extracts within the resource budget") {
    // q = 10 (columns) + 5 (diagonal select) + 1 (data) = 16 qubits
    const BandedMatrix a = diagonal_scale(generate_pressure_2d(32, 32)).scaled;
    const BandedMatrix p = spai_column(a, MeshDims{{32, 32}}, 3, SpaiSide::Left, 4);
    const BandedMatrix pa_full = banded_multiply(p, a);
    const BandedMatrix pa = drop_zero_diagonals(pa_full, default_drop_tolerance(pa_full)).matrix;
    REQUIRE(pa.diagonal_count() == 21);
    const MaxNormScaleResult ms = max_norm_scale(pa);
    const BlockEncoding enc = encode_banded(ms.scaled, ms.r);
    REQUIRE(enc.circuit.qubits == 16);

    const auto start = std::chrono::steady_clock::now();
    const VerificationReport report = verify_encoding(enc, pa, 1e-9, 4);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(report.passed);
    CHECK(seconds < 600.0);
    MESSAGE("q=16 block extraction took ", seconds, " s");
}
