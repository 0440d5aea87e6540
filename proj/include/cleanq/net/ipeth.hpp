#pragma once

#include "cleanq/net/flow.hpp"
#include "cleanq/net/framing.hpp"

namespace cleanq::net {

/*
 * Ethernet II + IPv4 encapsulation, same in-place discipline as the UDP
 * stage: Tx enqueue lays both headers into the 34 bytes in front of the
 * window (DF set, no fragmentation, ttl 64, proto UDP) and refuses
 * frames that would exceed the configured mtu; Rx dequeue checks the
 * MACs, the IP header checksum and the addresses, trims link padding
 * using the IP total length, and strips. Failures mark the token with
 * kDropFlag rather than erroring: a bad frame is the wire's fault, not
 * the caller's.
 */
class IpEthModule final : public FramingModule {
public:
    IpEthModule(QueueModule& lower, const FlowConfig& cfg, Dir dir)
        : FramingModule(lower), cfg_(cfg), dir_(dir) {}

    ErrorCode enqueue(const BufferToken& b) override;
    ErrorCode dequeue(BufferToken& out) override;

private:
    FlowConfig cfg_;
    Dir dir_;
    uint16_t ident_ = 0; /* IP identification, wraps */
};

} // namespace cleanq::net
