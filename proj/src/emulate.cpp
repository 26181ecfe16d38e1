// SPDX-License-Identifier: Apache-2.0
#include "qpw/emulate.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "fft_util.hpp"

namespace qpw {

StateVector StateVector::basis(int qubits, std::uint64_t index) {
    if (qubits < 0 || qubits > 62) throw std::invalid_argument("StateVector: bad qubit count");
    StateVector s;
    s.qubits = qubits;
    s.amplitudes.assign(std::uint64_t{1} << qubits, {0.0, 0.0});
    s.amplitudes.at(index) = {1.0, 0.0};
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
}

int emulator_qubit_guard() {
    if (const char* env = std::getenv("QPW_EMU_MAX_QUBITS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 24;
}

namespace {

using cdouble = std::complex<double>;

void check_qubit(int q, int qubits) {
    if (q < 0 || q >= qubits) throw std::out_of_range("apply_circuit: qubit index out of range");
}

/// Base index with every listed control bit set to its required value, plus
/// the list of remaining free qubit positions (excluding `skip` qubits).
struct MatchIter {
    std::uint64_t base = 0;
    std::vector<int> free_qubits;

    MatchIter(int qubits, const std::vector<ControlBit>& controls, const std::vector<int>& skip) {
        std::uint64_t used = 0;
        for (const ControlBit& c : controls) {
            check_qubit(c.qubit, qubits);
            used |= std::uint64_t{1} << c.qubit;
            if (c.bit) base |= std::uint64_t{1} << c.qubit;
        }
        for (int q : skip) {
            check_qubit(q, qubits);
            used |= std::uint64_t{1} << q;
        }
        for (int q = 0; q < qubits; ++q)
            if (!(used & (std::uint64_t{1} << q))) free_qubits.push_back(q);
    }

    std::uint64_t count() const { return std::uint64_t{1} << free_qubits.size(); }

    std::uint64_t index(std::uint64_t i) const {
        std::uint64_t idx = base;
        for (std::size_t b = 0; b < free_qubits.size(); ++b)
            if (i & (std::uint64_t{1} << b)) idx |= std::uint64_t{1} << free_qubits[b];
        return idx;
    }
};

std::uint64_t scatter(std::uint64_t value, const std::vector<int>& reg) {
    std::uint64_t idx = 0;
    for (std::size_t b = 0; b < reg.size(); ++b)
        if (value & (std::uint64_t{1} << b)) idx |= std::uint64_t{1} << reg[b];
    return idx;
}

void apply_ry(const MultiplexedRy& g, StateVector& state) {
    check_qubit(g.target, state.qubits);
    const MatchIter it(state.qubits, g.controls, {g.target});
    const std::uint64_t tbit = std::uint64_t{1} << g.target;
    const double c = std::cos(0.5 * g.angle);
    const double s = std::sin(0.5 * g.angle);
    for (std::uint64_t i = 0, end = it.count(); i < end; ++i) {
        const std::uint64_t i0 = it.index(i);
        const cdouble a0 = state.amplitudes[i0];
        const cdouble a1 = state.amplitudes[i0 | tbit];
        state.amplitudes[i0] = c * a0 - s * a1;
        state.amplitudes[i0 | tbit] = s * a0 + c * a1;
    }
}

void apply_phase(const MultiplexedPhase& g, StateVector& state) {
    check_qubit(g.target, state.qubits);
    const MatchIter it(state.qubits, g.controls, {g.target});
    const std::uint64_t tbit = std::uint64_t{1} << g.target;
    const cdouble phase = std::polar(1.0, g.phi);
    for (std::uint64_t i = 0, end = it.count(); i < end; ++i)
        state.amplitudes[it.index(i) | tbit] *= phase;
}

void apply_x(const PauliX& g, StateVector& state) {
    check_qubit(g.target, state.qubits);
    const MatchIter it(state.qubits, {}, {g.target});
    const std::uint64_t tbit = std::uint64_t{1} << g.target;
    for (std::uint64_t i = 0, end = it.count(); i < end; ++i) {
        const std::uint64_t i0 = it.index(i);
        std::swap(state.amplitudes[i0], state.amplitudes[i0 | tbit]);
    }
}

void apply_add(const ControlledAdd& g, StateVector& state, std::vector<cdouble>& scratch) {
    const std::uint64_t m = g.reg.size();
    const std::uint64_t dim = std::uint64_t{1} << m;
    const std::uint64_t addend = g.addend & (dim - 1);
    if (addend == 0) return;
    const MatchIter it(state.qubits, g.controls, g.reg);
    scratch.resize(dim);
    std::vector<std::uint64_t> reg_index(dim);
    for (std::uint64_t v = 0; v < dim; ++v) reg_index[v] = scatter(v, g.reg);
    for (std::uint64_t i = 0, end = it.count(); i < end; ++i) {
        const std::uint64_t i0 = it.index(i);
        for (std::uint64_t v = 0; v < dim; ++v)
            scratch[(v + addend) & (dim - 1)] = state.amplitudes[i0 | reg_index[v]];
        for (std::uint64_t v = 0; v < dim; ++v) state.amplitudes[i0 | reg_index[v]] = scratch[v];
    }
}

void apply_qft(const QftBlock& g, StateVector& state, std::vector<cdouble>& scratch) {
    const std::uint64_t m = g.reg.size();
    const std::uint64_t dim = std::uint64_t{1} << m;
    const MatchIter it(state.qubits, {}, g.reg);
    scratch.resize(dim);
    std::vector<std::uint64_t> reg_index(dim);
    for (std::uint64_t v = 0; v < dim; ++v) reg_index[v] = scatter(v, g.reg);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::uint64_t i = 0, end = it.count(); i < end; ++i) {
        const std::uint64_t i0 = it.index(i);
        for (std::uint64_t v = 0; v < dim; ++v) scratch[v] = state.amplitudes[i0 | reg_index[v]];
        detail::dft_inplace(scratch.data(), dim, g.inverse ? +1 : -1);
        for (std::uint64_t v = 0; v < dim; ++v)
            state.amplitudes[i0 | reg_index[v]] = scratch[v] * scale;
    }
}

void apply_prep(const PrepLoad& g, StateVector& state, std::vector<cdouble>& scratch) {
    const std::uint64_t m = g.reg.size();
    const std::uint64_t dim = std::uint64_t{1} << m;
    if (g.amplitudes.size() != dim)
        throw std::invalid_argument("apply_circuit: prep amplitude length mismatch");
    double norm2 = 0.0;
    for (double a : g.amplitudes) norm2 += a * a;
    if (std::fabs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("apply_circuit: prep amplitudes must be unit norm");

    // Householder u = (e0 - w)/||e0 - w||; the reflection I - 2 u u^T maps
    // |0> to w and back. Degenerate w = e0 is the identity.
    std::vector<double> u(g.amplitudes.begin(), g.amplitudes.end());
    u[0] -= 1.0;
    for (double& x : u) x = -x;  // u = e0 - w
    double len2 = 0.0;
    for (double x : u) len2 += x * x;
    if (len2 < 1e-28) return;
    const double inv = 1.0 / std::sqrt(len2);
    for (double& x : u) x *= inv;

    const MatchIter it(state.qubits, {}, g.reg);
    scratch.resize(dim);
    std::vector<std::uint64_t> reg_index(dim);
    for (std::uint64_t v = 0; v < dim; ++v) reg_index[v] = scatter(v, g.reg);
    for (std::uint64_t i = 0, end = it.count(); i < end; ++i) {
        const std::uint64_t i0 = it.index(i);
        cdouble dot = 0.0;
        for (std::uint64_t v = 0; v < dim; ++v) {
            scratch[v] = state.amplitudes[i0 | reg_index[v]];
            dot += u[v] * scratch[v];
        }
        dot *= 2.0;
        for (std::uint64_t v = 0; v < dim; ++v)
            state.amplitudes[i0 | reg_index[v]] = scratch[v] - dot * u[v];
    }
}

}  // namespace

void apply_circuit(const CircuitIR& circuit, StateVector& state) {
    if (circuit.qubits != state.qubits)
        throw std::invalid_argument("apply_circuit: qubit count mismatch");
    if (state.qubits > emulator_qubit_guard())
        throw std::runtime_error("apply_circuit: qubit guard exceeded (set QPW_EMU_MAX_QUBITS)");
    std::vector<cdouble> scratch;
    for (const Gate& g : circuit.gates) {
        std::visit(
            [&state, &scratch](const auto& gate) {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, MultiplexedRy>) apply_ry(gate, state);
                else if constexpr (std::is_same_v<T, MultiplexedPhase>) apply_phase(gate, state);
                else if constexpr (std::is_same_v<T, ControlledAdd>) apply_add(gate, state, scratch);
                else if constexpr (std::is_same_v<T, QftBlock>) apply_qft(gate, state, scratch);
                else if constexpr (std::is_same_v<T, PauliX>) apply_x(gate, state);
                else if constexpr (std::is_same_v<T, PrepLoad>) apply_prep(gate, state, scratch);
            },
            g);
    }
}

Eigen::MatrixXcd extract_block(const BlockEncoding& enc, int threads) {
    const int q = enc.circuit.qubits;
    if (q > emulator_qubit_guard())
        throw std::runtime_error("extract_block: qubit guard exceeded (set QPW_EMU_MAX_QUBITS)");
    const index_t n = enc.block_dim();
    Eigen::MatrixXcd block(n, n);

    const auto extract_column = [&](index_t c) {
        StateVector state = StateVector::basis(q, scatter(static_cast<std::uint64_t>(c), enc.layout.j));
        apply_circuit(enc.circuit, state);
        for (index_t r = 0; r < n; ++r)
            block(r, c) = state.amplitudes[scatter(static_cast<std::uint64_t>(r), enc.layout.j)];
    };

    if (threads <= 1) {
        for (index_t c = 0; c < n; ++c) extract_column(c);
        return block;
    }
    std::vector<std::thread> pool;
    const int nthreads = std::min<index_t>(threads, n);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (index_t c = t; c < n; c += nthreads) extract_column(c);
        });
    }
    for (auto& th : pool) th.join();
    return block;
}

namespace {

VerificationReport verify_impl(const BlockEncoding& enc, const Eigen::MatrixXd& target, double tol,
                               int threads) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.n = enc.block_dim();
    report.qubits = enc.circuit.qubits;
    report.gate_count = static_cast<index_t>(enc.circuit.gates.size());
    if (target.rows() != report.n || target.cols() != report.n)
        throw std::invalid_argument("verify_encoding: target dimension mismatch");

    const Eigen::MatrixXcd block = extract_block(enc, threads);
    double err = 0.0;
    for (index_t c = 0; c < report.n; ++c)
        for (index_t r = 0; r < report.n; ++r)
            err = std::max(err, std::abs(enc.subnorm * block(r, c) - target(r, c)));
    report.max_abs_err = err;
    report.passed = err <= tol;
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace

VerificationReport verify_encoding(const BlockEncoding& enc, const BandedMatrix& target, double tol,
                                   int threads) {
    return verify_impl(enc, target.dense(), tol, threads);
}

VerificationReport verify_encoding_dense(const BlockEncoding& enc, const Eigen::MatrixXd& target,
                                         double tol, int threads) {
    return verify_impl(enc, target, tol, threads);
}

nlohmann::json verification_to_json(const VerificationReport& r) {
    return {{"max_abs_err", r.max_abs_err}, {"passed", r.passed},     {"n", r.n},
            {"qubits", r.qubits},           {"gate_count", r.gate_count},
            {"wall_time_s", r.wall_time_s}};
}

}  // namespace qpw
