#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cleanq/trace.hpp"

namespace cleanq::model {

struct InterferenceOptions {
    /* The harness drained both directions before snapshotting; nothing may
     * remain in flight. */
    bool expect_drained = false;
};

struct InterferenceReport {
    bool ok = true;
    std::vector<std::string> violations;
    /* Matched enqueue/dequeue pairs whose post-return timestamps appear
     * reversed. Timestamps are taken after each call returns, so close
     * races can legitimately invert; this count is advisory, not a
     * violation. */
    uint64_t timestamp_inversions = 0;
    uint64_t events_checked = 0;
    uint64_t in_flight_ab = 0;
    uint64_t in_flight_ba = 0;
};

/*
 * Validates a genuinely concurrent two-thread run from the two per-actor
 * traces:
 *
 *  - each actor's trace, replayed alone, never enqueues bytes it does not
 *    hold and never dequeues bytes it already holds (the per-actor half of
 *    disjointness, decidable without any global order);
 *  - per direction, the dequeued buffer sequence is a prefix of the
 *    enqueued buffer sequence (FIFO delivery, no loss, no duplication, no
 *    reordering) - which is exactly the weakened postcondition: a buffer
 *    enqueued by A stays downstream of A until A gets it back;
 *  - in-flight counts stay consistent, and are zero if the caller drained.
 */
InterferenceReport check_interference(const Trace& trace_a, const Trace& trace_b,
                                      const InterferenceOptions& opt = {});

} // namespace cleanq::model
