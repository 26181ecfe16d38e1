// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qpw/banded.hpp"

namespace qpw {

/// One control bit of a multiplexed gate. Qubits not listed are don't-care;
/// untrimmed circuits list every control bit explicitly.
struct ControlBit {
    int qubit = 0;
    int bit = 0;

    friend bool operator==(const ControlBit&, const ControlBit&) = default;
    friend auto operator<=>(const ControlBit&, const ControlBit&) = default;
};

/// Ry(angle) on `target` under the control pattern. `diagonal` records which
/// matrix diagonal the rotation loads, which the trimming pass groups by.
struct MultiplexedRy {
    int target = 0;
    std::vector<ControlBit> controls;
    double angle = 0.0;
    index_t diagonal = 0;
};

/// diag(1, e^{i phi}) on `target` under the control pattern; used to load the
/// phase of complex diagonal values (circulant spectra).
struct MultiplexedPhase {
    int target = 0;
    std::vector<ControlBit> controls;
    double phi = 0.0;
};

/// |v> -> |v + addend mod 2^m> on the register (LSB first) under the controls.
struct ControlledAdd {
    std::vector<int> reg;
    std::uint64_t addend = 0;
    std::vector<ControlBit> controls;
};

/// Unitary DFT on the register: F[j,k] = w^{jk}/sqrt(M) with w = e^{-2 pi i/M}
/// (inverse = conjugate transpose).
struct QftBlock {
    std::vector<int> reg;
    bool inverse = false;
};

struct PauliX {
    int target = 0;
};

/// State preparation completed as a Householder reflection, so the gate is an
/// involution mapping |0...0> <-> the given (real, unit-norm) amplitudes. The
/// same gate type therefore serves as both prep and unprep.
struct PrepLoad {
    std::vector<int> reg;
    std::vector<double> amplitudes;
};

using Gate = std::variant<MultiplexedRy, MultiplexedPhase, ControlledAdd, QftBlock, PauliX, PrepLoad>;

struct CircuitIR {
    int qubits = 0;
    std::vector<Gate> gates;
};

/// Named-register layout of a block encoding. The encoded block lives on the
/// j register with every other qubit (s, d0, del, inherited ancillas)
/// projected to |0>.
struct RegisterLayout {
    std::vector<int> j;   // column register, LSB first
    std::vector<int> s;   // diagonal-select register
    int d0 = -1;          // data qubit, -1 when absent
    int del = -1;         // range-extension qubit (Toeplitz), -1 when absent
    std::vector<int> extra;  // ancillas inherited through composition

    int total_qubits() const;
    std::vector<int> ancillas() const;  // sorted; everything but j
};

struct BlockEncoding {
    CircuitIR circuit;
    RegisterLayout layout;
    double subnorm = 1.0;     // full subnormalisation including extra_scale
    double extra_scale = 1.0; // upstream max-norm factors folded into subnorm
    std::string target;       // description of the encoded matrix

    index_t block_dim() const { return index_t{1} << layout.j.size(); }
};

struct GateCounts {
    index_t rotations = 0;
    index_t unique_angles = 0;
    index_t adders = 0;
    index_t qft_blocks = 0;
    index_t phases = 0;
    index_t preps = 0;
    index_t x_gates = 0;
    index_t total = 0;
};

GateCounts count_gates(const CircuitIR& circuit);

/// Distinct rotation angles, clustering values closer than 1e-12.
index_t count_unique_angles(const CircuitIR& circuit);

/// Copy with every qubit index i replaced by map[i].
CircuitIR relabel(const CircuitIR& circuit, const std::vector<int>& map, int new_qubits);

nlohmann::json circuit_to_json(const CircuitIR& circuit);
CircuitIR circuit_from_json(const nlohmann::json& j);
nlohmann::json gate_counts_to_json(const GateCounts& counts);

}  // namespace qpw
