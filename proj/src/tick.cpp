#include "cleanq/tick.hpp"

namespace cleanq {

const TickCalibration& tick_calibration() {
    static const TickCalibration cal = [] {
        TickCalibration c;
        c.tick0 = tick_now();
        c.ns0 = monotonic_ns();
        uint64_t ns1 = c.ns0;
        while (ns1 - c.ns0 < 5'000'000) ns1 = monotonic_ns();
        const uint64_t tick1 = tick_now();
        c.ns_per_tick = tick1 == c.tick0
                            ? 1.0
                            : static_cast<double>(ns1 - c.ns0) /
                                  static_cast<double>(tick1 - c.tick0);
        return c;
    }();
    return cal;
}

} // namespace cleanq
