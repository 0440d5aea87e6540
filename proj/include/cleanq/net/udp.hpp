#pragma once

#include "cleanq/net/flow.hpp"
#include "cleanq/net/framing.hpp"

namespace cleanq::net {

/*
 * UDP encapsulation as a queue stage. In-place: the header lands in the
 * headroom in front of the payload window, so the buffer never gets
 * copied, only the cursor moves.
 *
 * Tx: enqueue writes src/dst port, length and the pseudo-header checksum
 * at valid_data - 8 and widens the window; dequeue (send completions)
 * narrows it back so the caller sees the cursor it enqueued.
 *
 * Rx: dequeue validates ports and length against the flow, optionally
 * the checksum, then strips the header. A frame that fails any check
 * comes back with kDropFlag so the buffer can be recycled; enqueue
 * (free buffers going back to the device) passes through untouched.
 */
class UdpModule final : public FramingModule {
public:
    UdpModule(QueueModule& lower, const FlowConfig& cfg, Dir dir)
        : FramingModule(lower), cfg_(cfg), dir_(dir) {}

    ErrorCode enqueue(const BufferToken& b) override;
    ErrorCode dequeue(BufferToken& out) override;

private:
    FlowConfig cfg_;
    Dir dir_;
};

} // namespace cleanq::net
