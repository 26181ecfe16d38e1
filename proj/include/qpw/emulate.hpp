// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include <json.hpp>

#include "qpw/circuit.hpp"

namespace qpw {

struct StateVector {
    int qubits = 0;
    std::vector<std::complex<double>> amplitudes;  // length 2^qubits

    static StateVector basis(int qubits, std::uint64_t index);
    double norm() const;
};

/// Hard cap on emulated qubits (default 24); override with the
/// QPW_EMU_MAX_QUBITS environment variable.
int emulator_qubit_guard();

/// Apply the gate list in order, in place. Throws on out-of-range qubit
/// indices or when the state exceeds the qubit guard.
void apply_circuit(const CircuitIR& circuit, StateVector& state);

/// The n x n block sitting at ancillas |0...0>: column c is obtained by
/// running the circuit on |c>_j |0>_anc and reading the j-register amplitudes
/// with all ancillas zero. Columns are independent; `threads` > 1 extracts
/// them in parallel with deterministic assembly.
Eigen::MatrixXcd extract_block(const BlockEncoding& enc, int threads = 1);

struct VerificationReport {
    double max_abs_err = 0.0;
    bool passed = false;
    index_t n = 0;
    int qubits = 0;
    index_t gate_count = 0;
    double wall_time_s = 0.0;
};

/// Emulate and compare subnorm * block against the target entrywise.
/// Failures are reported, not thrown.
VerificationReport verify_encoding(const BlockEncoding& enc, const BandedMatrix& target, double tol,
                                   int threads = 1);
VerificationReport verify_encoding_dense(const BlockEncoding& enc, const Eigen::MatrixXd& target,
                                         double tol, int threads = 1);

nlohmann::json verification_to_json(const VerificationReport& report);

}  // namespace qpw
