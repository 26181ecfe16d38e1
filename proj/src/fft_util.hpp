// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>

namespace qpw::detail {

/// In-place unnormalised DFT of length n: sign = -1 applies
/// sum_j x_j e^{-2 pi i jk/n} (forward), sign = +1 the conjugate transform.
/// Thread-safe; plans are cached per (n, sign).
void dft_inplace(std::complex<double>* data, std::size_t n, int sign);

}  // namespace qpw::detail
