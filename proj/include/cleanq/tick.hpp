#pragma once

#include <cstdint>

#if defined(__x86_64__) || defined(_M_X64)
#include <x86intrin.h>
#endif

#include "cleanq/trace.hpp"

namespace cleanq {

/* Cheapest monotonic tick source available: the CPU timestamp counter on
 * x86-64, the monotonic clock elsewhere. */
inline uint64_t tick_now() {
#if defined(__x86_64__) || defined(_M_X64)
    return __rdtsc();
#else
    return monotonic_ns();
#endif
}

/*
 * Fixed affine mapping from ticks to monotonic nanoseconds, measured once
 * per process. Hot paths record raw ticks; anything that needs wall-form
 * timestamps converts at leisure.
 */
struct TickCalibration {
    uint64_t tick0 = 0;
    uint64_t ns0 = 0;
    double ns_per_tick = 1.0;

    uint64_t to_ns(uint64_t tick) const {
        const double dt = static_cast<double>(static_cast<int64_t>(tick - tick0));
        return ns0 + static_cast<uint64_t>(static_cast<int64_t>(dt * ns_per_tick));
    }
    double ticks_per_ns() const { return ns_per_tick > 0 ? 1.0 / ns_per_tick : 1.0; }
};

/* First call burns a few milliseconds measuring the ratio. */
const TickCalibration& tick_calibration();

} // namespace cleanq
