// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qpw/circuit.hpp"

namespace qpw {

struct PreampFigures {
    double fom_plain = 0.0;   // alpha*beta*(gates_A + gates_P)
    double fom_preamp = 0.0;  // after amplifying each factor by gamma_{1,2}
    bool advantageous = false;
};

/// Figures of merit for multiplying block encodings with subnormalisations
/// alpha, beta, optionally preamplified by gamma1 < alpha and gamma2 < beta.
/// Amplifying by gamma costs gamma*(3/delta)*log(gamma/eps) queries; the
/// product is advantageous when gamma1 > (3/delta) log(gamma2/eps) and
/// gamma2 > (3/delta) log(gamma1/eps). Natural logarithms throughout.
PreampFigures preamp_figure_of_merit(double alpha, double beta, double gamma1, double gamma2,
                                     double delta, double eps, double gates_a, double gates_p);

/// Largest amplification keeping amplified singular values in range:
/// (1 - delta) * subnorm / sigma_max. Requires sigma_max <= subnorm.
double max_amplification(const BlockEncoding& enc, double sigma_max, double delta);

}  // namespace qpw
