// SPDX-License-Identifier: Apache-2.0
#include "qpw/encode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qpw {

namespace {

int log2_exact(index_t n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("encoding requires a power-of-two dimension");
    int bits = 0;
    while ((index_t{1} << bits) < n) ++bits;
    return bits;
}

int select_bits(index_t count) {
    int bits = 0;
    while ((index_t{1} << bits) < count) ++bits;
    return bits;
}

std::vector<ControlBit> register_controls(const std::vector<int>& reg, std::uint64_t value) {
    std::vector<ControlBit> controls;
    controls.reserve(reg.size());
    for (std::size_t b = 0; b < reg.size(); ++b)
        controls.push_back({reg[b], static_cast<int>((value >> b) & 1)});
    return controls;
}

std::vector<int> iota_register(int first, int count) {
    std::vector<int> reg(count);
    for (int i = 0; i < count; ++i) reg[i] = first + i;
    return reg;
}

std::vector<double> prep_amplitudes(const std::vector<double>& weights, int bits, double total) {
    std::vector<double> amps(std::size_t{1} << bits, 0.0);
    for (std::size_t d = 0; d < weights.size(); ++d) {
        const double mag = std::sqrt(std::fabs(weights[d]) / total);
        amps[d] = weights[d] < 0.0 ? -mag : mag;
    }
    return amps;
}

}  // namespace

BlockEncoding encode_toeplitz(const std::map<index_t, double>& diagonals, index_t n) {
    if (diagonals.empty()) throw std::invalid_argument("encode_toeplitz: no diagonals");
    const int nj = log2_exact(n);
    double subnorm = 0.0;
    index_t off_min = 0;
    for (const auto& [k, v] : diagonals) {
        if (std::llabs(k) >= n)
            throw std::invalid_argument("encode_toeplitz: offset magnitude must be < n");
        subnorm += std::fabs(v);
        off_min = std::min(off_min, k);
    }
    if (subnorm == 0.0) throw std::invalid_argument("encode_toeplitz: zero diagonal map");

    const index_t d = static_cast<index_t>(diagonals.size());
    const bool any_negative =
        std::any_of(diagonals.begin(), diagonals.end(), [](const auto& kv) { return kv.second < 0.0; });
    const int ns = std::max(select_bits(d), (d == 1 && any_negative) ? 1 : 0);

    BlockEncoding enc;
    enc.layout.j = iota_register(0, nj);
    enc.layout.del = nj;
    enc.layout.s = iota_register(nj + 1, ns);
    enc.subnorm = subnorm;
    enc.target = "toeplitz";

    CircuitIR& circ = enc.circuit;
    circ.qubits = nj + 1 + ns;

    // The shift register is j plus the range-extension qubit, so shifts act
    // mod 2n and out-of-range values land outside the top-left n x n block.
    std::vector<int> shift_reg = iota_register(0, nj + 1);
    const std::uint64_t mod = std::uint64_t{1} << (nj + 1);

    std::vector<double> prep_w, unprep_w;
    for (const auto& [k, v] : diagonals) {
        prep_w.push_back(std::fabs(v));
        unprep_w.push_back(v);
    }
    if (ns > 0) circ.gates.emplace_back(PrepLoad{enc.layout.s, prep_amplitudes(prep_w, ns, subnorm)});

    // Controlled shifts are offset by -off_min so every addend is
    // non-negative; one global shift moves the diagonals into place.
    std::uint64_t sel = 0;
    for (const auto& [k, v] : diagonals) {
        const std::uint64_t addend = static_cast<std::uint64_t>(k - off_min) % mod;
        if (addend != 0)
            circ.gates.emplace_back(ControlledAdd{shift_reg, addend, register_controls(enc.layout.s, sel)});
        ++sel;
    }
    const std::uint64_t global =
        static_cast<std::uint64_t>(off_min + static_cast<index_t>(mod)) % mod;
    if (global != 0) circ.gates.emplace_back(ControlledAdd{shift_reg, global, {}});

    if (ns > 0) circ.gates.emplace_back(PrepLoad{enc.layout.s, prep_amplitudes(unprep_w, ns, subnorm)});
    return enc;
}

BlockEncoding encode_banded(const BandedMatrix& a, double extra_scale) {
    const index_t n = a.size();
    const int nj = log2_exact(n);
    if (a.diagonal_count() < 1) throw std::invalid_argument("encode_banded: no diagonals");
    if (extra_scale <= 0.0) throw std::invalid_argument("encode_banded: extra_scale must be positive");
    if (a.max_abs() > 1.0 + 1e-12)
        throw std::invalid_argument("encode_banded: entries must lie in [-1, 1]; max-norm scale first");

    // Per-diagonal unit-max normalisation keeps every rotation angle real and
    // puts the diagonal maxima into the prep weights.
    std::vector<index_t> offsets = a.offsets();
    std::vector<double> maxima(offsets.size(), 0.0);
    double subnorm = 0.0;
    for (std::size_t d = 0; d < offsets.size(); ++d) {
        for (double v : a.diagonal(offsets[d])) maxima[d] = std::max(maxima[d], std::fabs(v));
        subnorm += maxima[d];
    }
    if (subnorm == 0.0) throw std::invalid_argument("encode_banded: zero matrix");

    const int ns = select_bits(static_cast<index_t>(offsets.size()));

    BlockEncoding enc;
    enc.layout.j = iota_register(0, nj);
    enc.layout.s = iota_register(nj, ns);
    enc.layout.d0 = nj + ns;
    enc.subnorm = subnorm * extra_scale;
    enc.extra_scale = extra_scale;
    enc.target = "banded";

    CircuitIR& circ = enc.circuit;
    circ.qubits = nj + ns + 1;
    const std::uint64_t mod = std::uint64_t{1} << nj;

    if (ns > 0) circ.gates.emplace_back(PrepLoad{enc.layout.s, prep_amplitudes(maxima, ns, subnorm)});

    for (std::size_t d = 0; d < offsets.size(); ++d) {
        if (maxima[d] == 0.0) continue;  // a zero diagonal only loads a zero prep weight
        const index_t k = offsets[d];
        const std::vector<double>& values = a.diagonal(k);
        for (index_t t = 0; t < static_cast<index_t>(values.size()); ++t) {
            if (values[t] == 0.0) continue;
            const index_t col = k >= 0 ? t : t - k;
            const double v = std::clamp(values[t] / maxima[d], -1.0, 1.0);
            MultiplexedRy ry;
            ry.target = enc.layout.d0;
            ry.controls = register_controls(enc.layout.s, d);
            const auto jc = register_controls(enc.layout.j, static_cast<std::uint64_t>(col));
            ry.controls.insert(ry.controls.end(), jc.begin(), jc.end());
            ry.angle = 2.0 * std::asin(v);
            ry.diagonal = k;
            circ.gates.emplace_back(std::move(ry));
        }
    }
    circ.gates.emplace_back(PauliX{enc.layout.d0});

    for (std::size_t d = 0; d < offsets.size(); ++d) {
        if (maxima[d] == 0.0) continue;
        const std::uint64_t addend =
            (static_cast<std::uint64_t>(offsets[d] % static_cast<index_t>(mod)) + mod) % mod;
        if (addend != 0)
            circ.gates.emplace_back(
                ControlledAdd{enc.layout.j, addend, register_controls(enc.layout.s, d)});
    }

    if (ns > 0) circ.gates.emplace_back(PrepLoad{enc.layout.s, prep_amplitudes(maxima, ns, subnorm)});
    return enc;
}

BlockEncoding encode_clai_product(const CirculantSpectrum& spectrum, const BlockEncoding& enc_a) {
    const index_t n = enc_a.block_dim();
    if (spectrum.size() != n) throw std::invalid_argument("encode_clai_product: dimension mismatch");
    const double lam_min = spectrum.min_abs();
    if (lam_min == 0.0) throw std::runtime_error("encode_clai_product: zero eigenvalue");
    const double r_c = 1.0 / lam_min;  // max_k |1/Lambda_k|

    BlockEncoding enc;
    enc.layout = enc_a.layout;
    const int d0c = enc_a.circuit.qubits;
    enc.layout.extra.push_back(d0c);
    enc.subnorm = enc_a.subnorm * r_c;
    enc.extra_scale = enc_a.extra_scale;
    enc.target = "clai-product(" + enc_a.target + ")";

    CircuitIR& circ = enc.circuit;
    circ.qubits = enc_a.circuit.qubits + 1;
    circ.gates = enc_a.circuit.gates;

    // C = F^dag diag(Lambda) F under w = e^{-2 pi i/N}, so the inverse factor
    // is F^dag Lambda^{-1} F: transform, load the scaled inverse spectrum on
    // the fresh data qubit, transform back.
    circ.gates.emplace_back(QftBlock{enc.layout.j, false});  // F
    for (index_t k = 0; k < n; ++k) {
        const std::complex<double> w = 1.0 / spectrum.lambda[k] / r_c;
        const double mag = std::min(std::abs(w), 1.0);
        MultiplexedRy ry;
        ry.target = d0c;
        ry.controls = register_controls(enc.layout.j, static_cast<std::uint64_t>(k));
        ry.angle = 2.0 * std::asin(mag);
        ry.diagonal = 0;
        circ.gates.emplace_back(std::move(ry));
        const double phi = std::arg(w);
        if (std::fabs(phi) > 1e-15)
            circ.gates.emplace_back(MultiplexedPhase{
                d0c, register_controls(enc.layout.j, static_cast<std::uint64_t>(k)), phi});
    }
    circ.gates.emplace_back(PauliX{d0c});
    circ.gates.emplace_back(QftBlock{enc.layout.j, true});  // F^dag
    return enc;
}

BlockEncoding multiply_encodings(const BlockEncoding& u_p, const BlockEncoding& u_a) {
    if (u_p.layout.j.size() != u_a.layout.j.size())
        throw std::invalid_argument("multiply_encodings: system dimension mismatch");
    const int nj = static_cast<int>(u_a.layout.j.size());

    BlockEncoding enc;
    enc.subnorm = u_p.subnorm * u_a.subnorm;
    enc.extra_scale = u_p.extra_scale * u_a.extra_scale;
    enc.target = "product(" + u_p.target + "," + u_a.target + ")";
    enc.layout.j = iota_register(0, nj);

    // U_A keeps its qubits; U_P's ancillas move above them. Both factors must
    // already have j as the low register, which every constructor here does.
    if (u_a.layout.j != enc.layout.j || u_p.layout.j != enc.layout.j)
        throw std::invalid_argument("multiply_encodings: factors must use the low-qubit j register");

    const int qa = u_a.circuit.qubits;
    const int qp = u_p.circuit.qubits;
    std::vector<int> map(qp);
    for (int q = 0; q < nj; ++q) map[q] = q;
    for (int q = nj; q < qp; ++q) map[q] = q + (qa - nj);

    enc.circuit.qubits = qa + qp - nj;
    enc.circuit.gates = u_a.circuit.gates;
    const CircuitIR relabelled = relabel(u_p.circuit, map, enc.circuit.qubits);
    enc.circuit.gates.insert(enc.circuit.gates.end(), relabelled.gates.begin(),
                             relabelled.gates.end());

    for (int q = nj; q < qa; ++q) enc.layout.extra.push_back(q);
    for (int q = nj; q < qp; ++q) enc.layout.extra.push_back(q + (qa - nj));
    return enc;
}

}  // namespace qpw
