#pragma once

#include <cstddef>
#include <cstdint>

namespace refsum {

/*
 * Reference Internet checksum, kept deliberately independent of the
 * library's implementation: bytes are paired big-endian and the end-around
 * carry is folded immediately after every addition instead of being
 * deferred. Tests compare the library against this oracle; nothing in the
 * library may include this header.
 */

/* One's-complement sum (not complemented) of the buffer, big-endian words. */
uint16_t ones_sum(const uint8_t* data, size_t len);

/* The checksum value a header would carry (complement of ones_sum). */
uint16_t checksum(const uint8_t* data, size_t len);

/*
 * Verification identity: a region that embeds a correct checksum sums to
 * 0xFFFF. This checks validity without recomputing the stored field.
 */
bool verify(const uint8_t* data, size_t len);

/* Full UDP checksum with IPv4 pseudo-header; 0 is mapped to 0xFFFF.
 * Addresses and ports in host order, exactly as a test would write them. */
uint16_t udp_checksum(uint32_t src_ip, uint32_t dst_ip, uint16_t src_port, uint16_t dst_port,
                      const uint8_t* payload, size_t payload_len);

} // namespace refsum
