#pragma once

#include <cstdint>
#include <vector>

#include "cleanq/tick.hpp"

namespace cleanq::bench {

/* Order statistics over one batch of per-op samples, nanoseconds. */
struct Summary {
    uint64_t count = 0;
    double mean_ns = 0.0;
    double median_ns = 0.0;
    double p5_ns = 0.0;
    double p95_ns = 0.0;
    double stddev_ns = 0.0;
    double median_cycles = 0.0;
};

Summary summarize(std::vector<double> samples_ns);

/* Median cost of an empty timed section, computed once. Subtracting it
 * keeps the probe itself out of small per-op numbers. */
double empty_section_ns();

/* Drop the leading warmup tenth, subtract the empty-section baseline
 * (floored at zero), summarize. */
Summary finalize(std::vector<double> samples_ns);

/* Time fn() iters times, one sample per call. */
template <typename F>
Summary measure(size_t iters, F&& fn) {
    std::vector<double> ns;
    ns.reserve(iters);
    const TickCalibration& cal = tick_calibration();
    for (size_t i = 0; i < iters; ++i) {
        const uint64_t t0 = tick_now();
        fn();
        const uint64_t t1 = tick_now();
        ns.push_back(static_cast<double>(t1 - t0) * cal.ns_per_tick);
    }
    return finalize(std::move(ns));
}

} // namespace cleanq::bench
