// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "qpw/circuit.hpp"

namespace qpw {

struct Bin {
    double lo = 0.0;
    double hi = 0.0;
    double mid = 0.0;                // (lo + hi)/2; every member is reset to this
    std::vector<index_t> members;    // indices into the input vector
};

/// Double-pass value binning. Pass 1 scans the sorted distinct values for
/// maximal windows whose spread is at most f times the window mean (in
/// magnitude); pass 2 greedily keeps the window with the most member entries,
/// then rescans the uncovered runs. Values are grouped by sign first, so no
/// bin spans zero and zero entries stay exactly zero. f = 0 leaves every
/// distinct value in its own bin. Bins come back sorted by lo.
std::vector<Bin> bin_values(const std::vector<double>& values, double f);

/// Apply bin_values to each stored diagonal independently and reset entries
/// to their bin midpoints.
BandedMatrix filter_matrix(const BandedMatrix& m, double f);

nlohmann::json bins_to_json(const std::vector<Bin>& bins);

/// Merge multiplexed rotations that load the same diagonal with the same
/// angle (within 1e-12) and whose control patterns differ in exactly one
/// cared bit; merged gates drop that control. Sweeps bits from the least
/// significant up and repeats to a fixpoint, so a complete set of 2^k equal
/// patterns collapses to a single gate. The emulated unitary is unchanged.
/// Expects a banded-encoding circuit (one contiguous rotation run).
CircuitIR collapse_rotations(const CircuitIR& circuit);

struct TrimStats {
    index_t unique_angles_before = 0;
    index_t unique_angles_after = 0;
    index_t rotations_before = 0;
    index_t rotations_after = 0;
    double l2_solution_error = 0.0;
    double f = 0.0;
};

/// Gate statistics plus the L2 distance between the unit-normalised solutions
/// of A x = b and A_f x_f = b, taken at the closer global sign (a normalised
/// solution state has no observable overall sign).
TrimStats trimming_metrics(const BandedMatrix& a, const BandedMatrix& a_f,
                           const Eigen::VectorXd& b, const CircuitIR& before,
                           const CircuitIR& after);

/// Fixed pseudo-random unit vector; the default right-hand side for solution
/// comparisons. A structureless b avoids aliasing with the near-null
/// mass-conservation mode of the generated matrices.
Eigen::VectorXd deterministic_rhs(index_t n);

}  // namespace qpw
