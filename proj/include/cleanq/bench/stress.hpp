#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cleanq::bench {

struct StressOptions {
    uint64_t seed = 1;
    size_t segments = 4;
    size_t ops_per_segment = 250000; /* A->B->A round trips per segment */
    uint32_t ring_capacity = 64;
    uint32_t buffers = 32;
    uint64_t buffer_len = 256;
    /* keep adding segments until at least this much wall time has passed */
    double min_seconds = 0.0;
};

struct StressResult {
    bool ok = true;
    std::vector<std::string> violations; /* checker complaints, per segment */
    uint64_t stamp_mismatches = 0;       /* payload corruption seen by either side */
    uint64_t transfers = 0;              /* completed round trips */
    uint64_t timestamp_inversions = 0;   /* advisory, from the checker */
    uint64_t segments_run = 0;
    bool conservation_ok = true; /* every buffer back home after each segment */
    double seconds = 0.0;
};

/*
 * Two threads, one per side, hammer a ring pair: A stamps and sends, B
 * verifies, restamps and returns, A verifies the reply. Each side records
 * its own trace; at the end of every segment the queues are drained and
 * the pair of traces goes through the concurrent-run checker. Stamps mix
 * buffer offset and segment number, so a stale or duplicated delivery
 * surfaces as a mismatch even across segments.
 */
StressResult run_stress(const StressOptions& opt);

} // namespace cleanq::bench
