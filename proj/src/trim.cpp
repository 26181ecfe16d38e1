// SPDX-License-Identifier: Apache-2.0
#include "qpw/trim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <stdexcept>

#include "qpw/solve.hpp"

namespace qpw {

namespace {

struct DistinctValue {
    double value = 0.0;
    std::vector<index_t> members;
};

struct Window {
    std::size_t begin = 0;  // distinct-value index range [begin, end]
    std::size_t end = 0;
    index_t count = 0;      // member entries covered
};

/// Longest window starting at `begin` within [begin, limit] whose spread
/// stays within f times the magnitude of the running member mean.
Window maximal_window(const std::vector<DistinctValue>& distinct, std::size_t begin,
                      std::size_t limit, double f) {
    Window w{begin, begin, static_cast<index_t>(distinct[begin].members.size())};
    double sum = distinct[begin].value * w.count;
    for (std::size_t j = begin + 1; j <= limit; ++j) {
        const index_t extra = static_cast<index_t>(distinct[j].members.size());
        const index_t count = w.count + extra;
        const double total = sum + distinct[j].value * extra;
        const double mean = total / count;
        if (distinct[j].value - distinct[begin].value > f * std::fabs(mean)) break;
        w.end = j;
        w.count = count;
        sum = total;
    }
    return w;
}

void select_bins(const std::vector<DistinctValue>& distinct, std::size_t lo, std::size_t hi,
                 double f, std::vector<Window>& selected) {
    if (lo > hi) return;
    Window best = maximal_window(distinct, lo, hi, f);
    for (std::size_t i = lo + 1; i <= hi; ++i) {
        const Window w = maximal_window(distinct, i, hi, f);
        if (w.count > best.count) best = w;
    }
    selected.push_back(best);
    if (best.begin > lo) select_bins(distinct, lo, best.begin - 1, f, selected);
    if (best.end < hi) select_bins(distinct, best.end + 1, hi, f, selected);
}

void bin_group(const std::vector<std::pair<double, index_t>>& entries, double f,
               std::vector<Bin>& bins) {
    if (entries.empty()) return;
    std::vector<DistinctValue> distinct;
    for (const auto& [v, idx] : entries) {
        if (distinct.empty() || v != distinct.back().value) distinct.push_back({v, {}});
        distinct.back().members.push_back(idx);
    }
    std::vector<Window> selected;
    select_bins(distinct, 0, distinct.size() - 1, f, selected);
    for (const Window& w : selected) {
        Bin bin;
        bin.lo = distinct[w.begin].value;
        bin.hi = distinct[w.end].value;
        bin.mid = 0.5 * (bin.lo + bin.hi);
        for (std::size_t i = w.begin; i <= w.end; ++i)
            bin.members.insert(bin.members.end(), distinct[i].members.begin(),
                               distinct[i].members.end());
        std::sort(bin.members.begin(), bin.members.end());
        bins.push_back(std::move(bin));
    }
}

}  // namespace

std::vector<Bin> bin_values(const std::vector<double>& values, double f) {
    if (f < 0.0) throw std::invalid_argument("bin_values: f must be >= 0");

    std::vector<std::pair<double, index_t>> negatives, positives;
    std::vector<index_t> zeros;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0) negatives.emplace_back(values[i], static_cast<index_t>(i));
        else if (values[i] > 0.0) positives.emplace_back(values[i], static_cast<index_t>(i));
        else zeros.push_back(static_cast<index_t>(i));
    }
    std::sort(negatives.begin(), negatives.end());
    std::sort(positives.begin(), positives.end());

    std::vector<Bin> bins;
    bin_group(negatives, f, bins);
    if (!zeros.empty()) bins.push_back(Bin{0.0, 0.0, 0.0, zeros});
    bin_group(positives, f, bins);
    std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.lo < b.lo; });
    return bins;
}

BandedMatrix filter_matrix(const BandedMatrix& m, double f) {
    BandedMatrix out(m.size());
    for (const auto& [k, values] : m.diagonals()) {
        std::vector<double> filtered(values.size());
        for (const Bin& bin : bin_values(values, f))
            for (index_t idx : bin.members) filtered[idx] = bin.mid;
        out.set_diagonal(k, std::move(filtered));
    }
    return out;
}

nlohmann::json bins_to_json(const std::vector<Bin>& bins) {
    nlohmann::json out = nlohmann::json::array();
    for (const Bin& b : bins)
        out.push_back({{"lo", b.lo}, {"hi", b.hi}, {"mid", b.mid}, {"members", b.members}});
    return out;
}

namespace {

struct Pattern {
    std::uint64_t mask = 0;   // cared qubits
    std::uint64_t value = 0;  // required bits, subset of mask

    friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

struct RotationGroup {
    index_t diagonal = 0;
    int target = 0;
    double angle = 0.0;
    std::vector<Pattern> patterns;
};

Pattern pattern_of(const MultiplexedRy& g) {
    Pattern p;
    for (const ControlBit& c : g.controls) {
        p.mask |= std::uint64_t{1} << c.qubit;
        if (c.bit) p.value |= std::uint64_t{1} << c.qubit;
    }
    return p;
}

/// One bottom-up pass per call; returns whether anything merged.
bool sweep_merge(std::vector<Pattern>& patterns, int qubits) {
    bool changed = false;
    for (int k = 0; k < qubits; ++k) {
        const std::uint64_t bit = std::uint64_t{1} << k;
        std::map<Pattern, std::vector<std::size_t>> buckets;
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            if (!(patterns[i].mask & bit)) continue;
            buckets[{patterns[i].mask, patterns[i].value & ~bit}].push_back(i);
        }
        std::vector<Pattern> merged;
        std::vector<bool> remove(patterns.size(), false);
        for (const auto& [key, indices] : buckets) {
            if (indices.size() < 2) continue;
            // Complementary pair: same mask, values differing only in bit k.
            std::size_t zero = patterns.size(), one = patterns.size();
            for (std::size_t i : indices) {
                if (patterns[i].value & bit) {
                    if (one == patterns.size()) one = i;
                } else if (zero == patterns.size()) {
                    zero = i;
                }
            }
            if (zero == patterns.size() || one == patterns.size()) continue;
            remove[zero] = remove[one] = true;
            merged.push_back({key.mask & ~bit, key.value});
            changed = true;
        }
        if (!merged.empty()) {
            std::vector<Pattern> next;
            for (std::size_t i = 0; i < patterns.size(); ++i)
                if (!remove[i]) next.push_back(patterns[i]);
            next.insert(next.end(), merged.begin(), merged.end());
            std::sort(next.begin(), next.end());
            patterns.swap(next);
        }
    }
    return changed;
}

}  // namespace

CircuitIR collapse_rotations(const CircuitIR& circuit) {
    // Locate the rotation run; banded-encoding circuits keep all data-loading
    // rotations contiguous ahead of the arithmetic gates.
    std::size_t first = circuit.gates.size(), last = 0;
    std::vector<MultiplexedRy> rotations;
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        if (const auto* ry = std::get_if<MultiplexedRy>(&circuit.gates[i])) {
            if (rotations.empty()) first = i;
            last = i;
            rotations.push_back(*ry);
        }
    }
    if (rotations.empty()) return circuit;
    if (last - first + 1 != rotations.size())
        throw std::invalid_argument("collapse_rotations: expects one contiguous rotation run");

    std::sort(rotations.begin(), rotations.end(), [](const MultiplexedRy& a, const MultiplexedRy& b) {
        if (a.diagonal != b.diagonal) return a.diagonal < b.diagonal;
        if (a.target != b.target) return a.target < b.target;
        if (a.angle != b.angle) return a.angle < b.angle;
        return pattern_of(a) < pattern_of(b);
    });

    std::vector<RotationGroup> groups;
    for (const MultiplexedRy& g : rotations) {
        const bool fresh = groups.empty() || groups.back().diagonal != g.diagonal ||
                           groups.back().target != g.target ||
                           std::fabs(g.angle - groups.back().angle) > 1e-12;
        if (fresh) groups.push_back({g.diagonal, g.target, g.angle, {}});
        groups.back().patterns.push_back(pattern_of(g));
    }

    std::vector<MultiplexedRy> merged;
    for (RotationGroup& group : groups) {
        while (sweep_merge(group.patterns, circuit.qubits)) {
        }
        for (const Pattern& p : group.patterns) {
            MultiplexedRy g;
            g.target = group.target;
            g.angle = group.angle;
            g.diagonal = group.diagonal;
            for (int q = 0; q < circuit.qubits; ++q)
                if (p.mask & (std::uint64_t{1} << q))
                    g.controls.push_back({q, (p.value >> q) & 1 ? 1 : 0});
            merged.push_back(std::move(g));
        }
    }

    CircuitIR out;
    out.qubits = circuit.qubits;
    out.gates.reserve(circuit.gates.size() - rotations.size() + merged.size());
    for (std::size_t i = 0; i < first; ++i) out.gates.push_back(circuit.gates[i]);
    for (MultiplexedRy& g : merged) out.gates.emplace_back(std::move(g));
    for (std::size_t i = last + 1; i < circuit.gates.size(); ++i) out.gates.push_back(circuit.gates[i]);
    return out;
}

TrimStats trimming_metrics(const BandedMatrix& a, const BandedMatrix& a_f,
                           const Eigen::VectorXd& b, const CircuitIR& before,
                           const CircuitIR& after) {
    if (a.size() != a_f.size() || a.size() != b.size())
        throw std::invalid_argument("trimming_metrics: dimension mismatch");
    TrimStats stats;
    const GateCounts cb = count_gates(before);
    const GateCounts ca = count_gates(after);
    stats.rotations_before = cb.rotations;
    stats.rotations_after = ca.rotations;
    stats.unique_angles_before = cb.unique_angles;
    stats.unique_angles_after = ca.unique_angles;

    Eigen::VectorXd x = sparse_solve(a, b);
    Eigen::VectorXd x_f = sparse_solve(a_f, b);
    x.normalize();
    x_f.normalize();
    // Normalised solution states carry no observable global sign; compare at
    // the closer orientation.
    stats.l2_solution_error = std::min((x_f - x).norm(), (x_f + x).norm());
    return stats;
}

Eigen::VectorXd deterministic_rhs(index_t n) {
    std::mt19937 rng(0xb0b5);
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::VectorXd b(n);
    for (index_t i = 0; i < n; ++i) b[i] = dist(rng);
    b.normalize();
    return b;
}

}  // namespace qpw
