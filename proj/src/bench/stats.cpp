#include "cleanq/bench/stats.hpp"

#include <algorithm>
#include <cmath>

namespace cleanq::bench {

Summary summarize(std::vector<double> s) {
    Summary out;
    out.count = s.size();
    if (s.empty())
        return out;
    std::sort(s.begin(), s.end());
    const size_t n = s.size();

    out.median_ns = (n % 2) ? s[n / 2] : (s[n / 2 - 1] + s[n / 2]) / 2.0;
    out.p5_ns = s[n * 5 / 100];
    out.p95_ns = s[n * 95 / 100 < n ? n * 95 / 100 : n - 1];

    double sum = 0.0;
    for (double x : s)
        sum += x;
    out.mean_ns = sum / static_cast<double>(n);

    double var = 0.0;
    for (double x : s)
        var += (x - out.mean_ns) * (x - out.mean_ns);
    out.stddev_ns = std::sqrt(var / static_cast<double>(n));

    out.median_cycles = out.median_ns * tick_calibration().ticks_per_ns();
    return out;
}

double empty_section_ns() {
    static const double value = [] {
        std::vector<double> ns;
        ns.reserve(4096);
        const TickCalibration& cal = tick_calibration();
        for (int i = 0; i < 4096; ++i) {
            const uint64_t t0 = tick_now();
            const uint64_t t1 = tick_now();
            ns.push_back(static_cast<double>(t1 - t0) * cal.ns_per_tick);
        }
        std::sort(ns.begin(), ns.end());
        return ns[ns.size() / 2];
    }();
    return value;
}

Summary finalize(std::vector<double> samples) {
    samples.erase(samples.begin(),
                  samples.begin() + static_cast<ptrdiff_t>(samples.size() / 10));
    const double base = empty_section_ns();
    for (double& x : samples)
        x = x > base ? x - base : 0.0;
    return summarize(std::move(samples));
}

} // namespace cleanq::bench
