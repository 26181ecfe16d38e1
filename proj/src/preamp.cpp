// SPDX-License-Identifier: Apache-2.0
#include "qpw/preamp.hpp"

#include <cmath>
#include <stdexcept>

namespace qpw {

PreampFigures preamp_figure_of_merit(double alpha, double beta, double gamma1, double gamma2,
                                     double delta, double eps, double gates_a, double gates_p) {
    if (!(gamma1 >= 1.0 && gamma1 < alpha))
        throw std::invalid_argument("preamp: require 1 <= gamma1 < alpha");
    if (!(gamma2 >= 1.0 && gamma2 < beta))
        throw std::invalid_argument("preamp: require 1 <= gamma2 < beta");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("preamp: require 0 < delta < 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("preamp: require 0 < eps < 1");
    if (gates_a < 0.0 || gates_p < 0.0) throw std::invalid_argument("preamp: negative gate count");

    PreampFigures out;
    out.fom_plain = alpha * beta * (gates_a + gates_p);
    const double amp = 3.0 / delta;
    out.fom_preamp = alpha * beta *
                     ((1.0 / gamma2) * amp * std::log(gamma1 / eps) * gates_a +
                      (1.0 / gamma1) * amp * std::log(gamma2 / eps) * gates_p);
    out.advantageous =
        gamma1 > amp * std::log(gamma2 / eps) && gamma2 > amp * std::log(gamma1 / eps);
    return out;
}

double max_amplification(const BlockEncoding& enc, double sigma_max, double delta) {
    if (sigma_max <= 0.0) throw std::invalid_argument("max_amplification: sigma_max must be positive");
    if (sigma_max > enc.subnorm * (1.0 + 1e-12))
        throw std::invalid_argument("max_amplification: sigma_max exceeds the subnormalisation");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("max_amplification: require 0 < delta < 1");
    return (1.0 - delta) * enc.subnorm / sigma_max;
}

}  // namespace qpw
