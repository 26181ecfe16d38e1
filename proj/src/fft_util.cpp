// SPDX-License-Identifier: Apache-2.0
#include "fft_util.hpp"

#include <map>
#include <mutex>

#include <fftw3.h>

namespace qpw::detail {

namespace {

std::mutex plan_mutex;

fftw_plan cached_plan(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = plans.find({n, sign});
    if (it != plans.end()) return it->second;
    // Plan on a scratch buffer; FFTW_UNALIGNED lets the plan execute on any
    // caller buffer afterwards.
    fftw_complex* scratch = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans.emplace(std::make_pair(n, sign), plan);
    return plan;
}

}  // namespace

void dft_inplace(std::complex<double>* data, std::size_t n, int sign) {
    if (n <= 1) return;
    fftw_plan plan = cached_plan(n, sign);
    fftw_complex* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace qpw::detail
