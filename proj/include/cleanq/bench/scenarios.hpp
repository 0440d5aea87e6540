#pragma once

#include <cstddef>
#include <vector>

#include "cleanq/bench/stats.hpp"

namespace cleanq::bench {

/* Cost of the four interface operations driven through an endpoint over a
 * loopback backend, plus enqueue/dequeue called directly on the backend,
 * so the interface overhead is the difference of two measured numbers. */
struct OpCosts {
    Summary reg;
    Summary dereg;
    Summary enq;
    Summary deq;
    Summary enq_direct;
    Summary deq_direct;
};
OpCosts bench_ops(size_t iters);

/* Enqueue cost through d stacked no-op modules, d = 0..max_depth. Each
 * sampled enqueue is paired with an untimed dequeue to keep the backend
 * shallow. */
struct StackCosts {
    std::vector<Summary> enq_at_depth;
};
StackCosts bench_stack(size_t iters, size_t max_depth);

/* Enqueue+dequeue round trip, bare backend vs the checking module. */
struct DebugCosts {
    Summary bare;
    Summary debug;
};
DebugCosts bench_debug(size_t iters);

/* Full framed echo round trip: UDP/IP/Ethernet encapsulation down to a
 * datagram socket, a local peer that validates and echoes, and the reply
 * parsed back up the mirror stack. One sample per round trip. */
Summary bench_echo(size_t rounds);

} // namespace cleanq::bench
