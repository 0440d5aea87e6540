#pragma once

#include <cstddef>
#include <cstdint>

namespace cleanq::net {

/*
 * Internet checksum (one's-complement sum of big-endian 16-bit words).
 * The accumulator defers all carry folding to the finish step. Chunked
 * summing is exact as long as every chunk except the last has even
 * length; headers are even, so only a trailing payload may be odd.
 */

uint64_t checksum_add(uint64_t acc, const uint8_t* data, size_t len);
uint16_t checksum_finish(uint64_t acc); // fold carries, complement

uint16_t inet_checksum(const uint8_t* data, size_t len);

/* Sum of the IPv4 pseudo-header for a UDP datagram of udp_len bytes.
 * Addresses in host order. */
uint64_t udp_pseudo_sum(uint32_t src_ip, uint32_t dst_ip, uint16_t udp_len);

} // namespace cleanq::net
