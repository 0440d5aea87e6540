#pragma once

#include <cstdint>

namespace cleanq::net {

struct MacAddr {
    uint8_t b[6] = {};

    friend bool operator==(const MacAddr&, const MacAddr&) = default;
};

/* Which half of the device a framing module sits on. A Tx module
 * transforms buffers on the way down (enqueue) and undoes the cursor
 * shift on completions; an Rx module parses on the way up (dequeue). */
enum class Dir : uint8_t { Tx, Rx };

/* Set on a token by the receive path when the frame failed validation
 * or got truncated. The buffer still flows to the caller so it can be
 * recycled; the payload window is meaningless. */
inline constexpr uint64_t kDropFlag = 1ull << 0;

inline constexpr uint64_t kEthHeaderLen = 14;
inline constexpr uint64_t kIpHeaderLen = 20;
inline constexpr uint64_t kUdpHeaderLen = 8;

/* Headroom a transmit buffer needs in front of the payload for the
 * full Ethernet + IPv4 + UDP encapsulation. */
inline constexpr uint64_t kFrameHeadroom =
    kEthHeaderLen + kIpHeaderLen + kUdpHeaderLen;

/*
 * One point-to-point flow, written from this host's perspective:
 * src_* names us, dst_* the peer. Rx modules match incoming frames
 * against the mirrored fields. Addresses are host order; they go onto
 * the wire big-endian.
 */
struct FlowConfig {
    MacAddr src_mac = {};
    MacAddr dst_mac = {};
    uint32_t src_ip = 0;
    uint32_t dst_ip = 0;
    uint16_t src_port = 0;
    uint16_t dst_port = 0;
    bool verify_rx_udp_checksum = false;
    uint32_t mtu = 1500; /* cap on the IP total length we will emit */
};

/* Wire byte order helpers. */

inline void wr16(uint8_t* p, uint16_t v) {
    p[0] = static_cast<uint8_t>(v >> 8);
    p[1] = static_cast<uint8_t>(v);
}

inline void wr32(uint8_t* p, uint32_t v) {
    p[0] = static_cast<uint8_t>(v >> 24);
    p[1] = static_cast<uint8_t>(v >> 16);
    p[2] = static_cast<uint8_t>(v >> 8);
    p[3] = static_cast<uint8_t>(v);
}

inline uint16_t rd16(const uint8_t* p) {
    return static_cast<uint16_t>((p[0] << 8) | p[1]);
}

inline uint32_t rd32(const uint8_t* p) {
    return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
           (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
}

} // namespace cleanq::net
