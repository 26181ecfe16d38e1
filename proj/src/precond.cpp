// SPDX-License-Identifier: Apache-2.0
#include "qpw/precond.hpp"

#include <stdexcept>

#include "qpw/tpai.hpp"

namespace qpw {

std::string precon_kind_name(PreconKind kind) {
    switch (kind) {
        case PreconKind::DS: return "ds";
        case PreconKind::SPAI: return "spai";
        case PreconKind::TPAI: return "tpai";
        case PreconKind::CLAI: return "clai";
    }
    return "unknown";
}

PreconKind precon_kind_from_name(const std::string& name) {
    if (name == "ds") return PreconKind::DS;
    if (name == "spai") return PreconKind::SPAI;
    if (name == "tpai") return PreconKind::TPAI;
    if (name == "clai") return PreconKind::CLAI;
    throw std::invalid_argument("unknown preconditioner kind: " + name);
}

std::string PreconditionerSpec::label() const {
    switch (kind) {
        case PreconKind::DS: return "ds";
        case PreconKind::CLAI: return "clai";
        case PreconKind::TPAI: return "tpai(" + std::to_string(infill) + ")";
        case PreconKind::SPAI:
            return std::string("spai-") + (method == SpaiMethod::Column ? "col" : "iter") + "(" +
                   std::to_string(infill) + ")";
    }
    return "unknown";
}

void PreconditionerSpec::validate() const {
    if (infill < 0) throw std::invalid_argument("preconditioner: infill must be >= 0");
    if (kind == PreconKind::CLAI && infill != 0)
        throw std::invalid_argument("preconditioner: CLAI takes no infill");
    if (kind == PreconKind::DS && infill != 0)
        throw std::invalid_argument("preconditioner: DS takes no infill");
    if (kind == PreconKind::SPAI && method == SpaiMethod::Iterative && iterations < 1)
        throw std::invalid_argument("preconditioner: iterative SPAI needs iterations >= 1");
}

BandedMatrix build_preconditioner(const BandedMatrix& a_scaled, const PreconditionerSpec& spec,
                                  const MeshDims& mesh, int threads) {
    spec.validate();
    switch (spec.kind) {
        case PreconKind::DS:
            return BandedMatrix::identity(a_scaled.size());
        case PreconKind::TPAI:
            return tpai(a_scaled, spec.infill);
        case PreconKind::SPAI: {
            if (spec.method == SpaiMethod::Column)
                return spai_column(a_scaled, mesh, spec.infill, SpaiSide::Left, threads);
            const StencilPattern base =
                mesh.rank() == 3 ? seven_point_stencil() : five_point_stencil();
            const PatternMask mask =
                PatternMask::from_stencil(infill_pattern(base, spec.infill), mesh);
            return spai_iterative(a_scaled, spec.iterations, &mask, SpaiDropOn::Update);
        }
        case PreconKind::CLAI:
            throw std::invalid_argument("build_preconditioner: CLAI has no banded form");
    }
    throw std::invalid_argument("build_preconditioner: unknown kind");
}

}  // namespace qpw
