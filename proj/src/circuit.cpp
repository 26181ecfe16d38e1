// SPDX-License-Identifier: Apache-2.0
#include "qpw/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpw {

int RegisterLayout::total_qubits() const {
    int q = static_cast<int>(j.size() + s.size() + extra.size());
    if (d0 >= 0) ++q;
    if (del >= 0) ++q;
    return q;
}

std::vector<int> RegisterLayout::ancillas() const {
    std::vector<int> anc(s);
    if (d0 >= 0) anc.push_back(d0);
    if (del >= 0) anc.push_back(del);
    anc.insert(anc.end(), extra.begin(), extra.end());
    std::sort(anc.begin(), anc.end());
    return anc;
}

GateCounts count_gates(const CircuitIR& circuit) {
    GateCounts c;
    for (const Gate& g : circuit.gates) {
        std::visit(
            [&c](const auto& gate) {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, MultiplexedRy>) ++c.rotations;
                else if constexpr (std::is_same_v<T, MultiplexedPhase>) ++c.phases;
                else if constexpr (std::is_same_v<T, ControlledAdd>) ++c.adders;
                else if constexpr (std::is_same_v<T, QftBlock>) ++c.qft_blocks;
                else if constexpr (std::is_same_v<T, PauliX>) ++c.x_gates;
                else if constexpr (std::is_same_v<T, PrepLoad>) ++c.preps;
            },
            g);
    }
    c.unique_angles = count_unique_angles(circuit);
    c.total = static_cast<index_t>(circuit.gates.size());
    return c;
}

index_t count_unique_angles(const CircuitIR& circuit) {
    std::vector<double> angles;
    for (const Gate& g : circuit.gates)
        if (const auto* ry = std::get_if<MultiplexedRy>(&g)) angles.push_back(ry->angle);
    if (angles.empty()) return 0;
    std::sort(angles.begin(), angles.end());
    index_t unique = 1;
    for (std::size_t i = 1; i < angles.size(); ++i)
        if (angles[i] - angles[i - 1] > 1e-12) ++unique;
    return unique;
}

namespace {

void relabel_controls(std::vector<ControlBit>& controls, const std::vector<int>& map) {
    for (ControlBit& c : controls) c.qubit = map.at(c.qubit);
}

void relabel_reg(std::vector<int>& reg, const std::vector<int>& map) {
    for (int& q : reg) q = map.at(q);
}

}  // namespace

CircuitIR relabel(const CircuitIR& circuit, const std::vector<int>& map, int new_qubits) {
    if (static_cast<int>(map.size()) != circuit.qubits)
        throw std::invalid_argument("relabel: map size mismatch");
    CircuitIR out;
    out.qubits = new_qubits;
    out.gates.reserve(circuit.gates.size());
    for (Gate g : circuit.gates) {
        std::visit(
            [&map](auto& gate) {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, MultiplexedRy> || std::is_same_v<T, MultiplexedPhase>) {
                    gate.target = map.at(gate.target);
                    relabel_controls(gate.controls, map);
                } else if constexpr (std::is_same_v<T, ControlledAdd>) {
                    relabel_reg(gate.reg, map);
                    relabel_controls(gate.controls, map);
                } else if constexpr (std::is_same_v<T, QftBlock> || std::is_same_v<T, PrepLoad>) {
                    relabel_reg(gate.reg, map);
                } else if constexpr (std::is_same_v<T, PauliX>) {
                    gate.target = map.at(gate.target);
                }
            },
            g);
        out.gates.push_back(std::move(g));
    }
    return out;
}

namespace {

nlohmann::json controls_to_json(const std::vector<ControlBit>& controls) {
    nlohmann::json out = nlohmann::json::array();
    for (const ControlBit& c : controls) out.push_back({{"qubit", c.qubit}, {"bit", c.bit}});
    return out;
}

std::vector<ControlBit> controls_from_json(const nlohmann::json& j) {
    std::vector<ControlBit> out;
    for (const auto& c : j) out.push_back({c.at("qubit").get<int>(), c.at("bit").get<int>()});
    return out;
}

}  // namespace

nlohmann::json circuit_to_json(const CircuitIR& circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : circuit.gates) {
        std::visit(
            [&gates](const auto& gate) {
                using T = std::decay_t<decltype(gate)>;
                nlohmann::json rec;
                if constexpr (std::is_same_v<T, MultiplexedRy>) {
                    rec = {{"type", "ry"},
                           {"target", gate.target},
                           {"controls", controls_to_json(gate.controls)},
                           {"angle", gate.angle},
                           {"diagonal", gate.diagonal}};
                } else if constexpr (std::is_same_v<T, MultiplexedPhase>) {
                    rec = {{"type", "phase"},
                           {"target", gate.target},
                           {"controls", controls_to_json(gate.controls)},
                           {"phi", gate.phi}};
                } else if constexpr (std::is_same_v<T, ControlledAdd>) {
                    rec = {{"type", "add"},
                           {"register", gate.reg},
                           {"addend", gate.addend},
                           {"controls", controls_to_json(gate.controls)}};
                } else if constexpr (std::is_same_v<T, QftBlock>) {
                    rec = {{"type", "qft"}, {"register", gate.reg}, {"inverse", gate.inverse}};
                } else if constexpr (std::is_same_v<T, PauliX>) {
                    rec = {{"type", "x"}, {"target", gate.target}};
                } else if constexpr (std::is_same_v<T, PrepLoad>) {
                    rec = {{"type", "prep"}, {"register", gate.reg}, {"amplitudes", gate.amplitudes}};
                }
                gates.push_back(std::move(rec));
            },
            g);
    }
    return {{"qubits", circuit.qubits}, {"gates", gates}};
}

CircuitIR circuit_from_json(const nlohmann::json& j) {
    CircuitIR circuit;
    circuit.qubits = j.at("qubits").get<int>();
    for (const auto& rec : j.at("gates")) {
        const std::string type = rec.at("type").get<std::string>();
        if (type == "ry") {
            MultiplexedRy g;
            g.target = rec.at("target").get<int>();
            g.controls = controls_from_json(rec.at("controls"));
            g.angle = rec.at("angle").get<double>();
            g.diagonal = rec.value("diagonal", index_t{0});
            circuit.gates.emplace_back(std::move(g));
        } else if (type == "phase") {
            MultiplexedPhase g;
            g.target = rec.at("target").get<int>();
            g.controls = controls_from_json(rec.at("controls"));
            g.phi = rec.at("phi").get<double>();
            circuit.gates.emplace_back(std::move(g));
        } else if (type == "add") {
            ControlledAdd g;
            g.reg = rec.at("register").get<std::vector<int>>();
            g.addend = rec.at("addend").get<std::uint64_t>();
            g.controls = controls_from_json(rec.at("controls"));
            circuit.gates.emplace_back(std::move(g));
        } else if (type == "qft") {
            circuit.gates.emplace_back(
                QftBlock{rec.at("register").get<std::vector<int>>(), rec.at("inverse").get<bool>()});
        } else if (type == "x") {
            circuit.gates.emplace_back(PauliX{rec.at("target").get<int>()});
        } else if (type == "prep") {
            circuit.gates.emplace_back(PrepLoad{rec.at("register").get<std::vector<int>>(),
                                                rec.at("amplitudes").get<std::vector<double>>()});
        } else {
            throw std::invalid_argument("circuit_from_json: unknown gate type " + type);
        }
    }
    return circuit;
}

nlohmann::json gate_counts_to_json(const GateCounts& c) {
    return {{"rotations", c.rotations},   {"unique_angles", c.unique_angles},
            {"adders", c.adders},         {"qft_blocks", c.qft_blocks},
            {"phases", c.phases},         {"preps", c.preps},
            {"x_gates", c.x_gates},       {"total", c.total}};
}

}  // namespace qpw
