// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "qpw/banded.hpp"
#include "qpw/spai.hpp"
#include "qpw/stencil.hpp"

namespace qpw {

enum class PreconKind { DS, SPAI, TPAI, CLAI };
enum class SpaiMethod { Column, Iterative };

struct PreconditionerSpec {
    PreconKind kind = PreconKind::DS;
    SpaiMethod method = SpaiMethod::Column;  // SPAI only
    int infill = 0;                          // SPAI/TPAI only
    int iterations = 5;                      // SPAI iterative only

    std::string label() const;
    void validate() const;  // CLAI takes no infill, etc.
};

/// Banded preconditioner for the diagonally scaled matrix: identity for DS,
/// SPAI by the selected method, or TPAI. CLAI is not banded; use
/// clai_spectrum/clai_apply instead.
BandedMatrix build_preconditioner(const BandedMatrix& a_scaled, const PreconditionerSpec& spec,
                                  const MeshDims& mesh, int threads = 1);

std::string precon_kind_name(PreconKind kind);
PreconKind precon_kind_from_name(const std::string& name);

}  // namespace qpw
