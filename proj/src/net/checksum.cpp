#include "cleanq/net/checksum.hpp"

namespace cleanq::net {

uint64_t checksum_add(uint64_t acc, const uint8_t* data, size_t len) {
    size_t i = 0;
    for (; i + 1 < len; i += 2)
        acc += static_cast<uint16_t>((data[i] << 8) | data[i + 1]);
    if (i < len)
        acc += static_cast<uint16_t>(data[i] << 8); /* odd tail, low byte zero */
    return acc;
}

uint16_t checksum_finish(uint64_t acc) {
    while (acc >> 16)
        acc = (acc & 0xFFFF) + (acc >> 16);
    return static_cast<uint16_t>(~acc & 0xFFFF);
}

uint16_t inet_checksum(const uint8_t* data, size_t len) {
    return checksum_finish(checksum_add(0, data, len));
}

uint64_t udp_pseudo_sum(uint32_t src_ip, uint32_t dst_ip, uint16_t udp_len) {
    uint64_t acc = 0;
    acc += src_ip >> 16;
    acc += src_ip & 0xFFFF;
    acc += dst_ip >> 16;
    acc += dst_ip & 0xFFFF;
    acc += 17; /* protocol, zero-padded high byte */
    acc += udp_len;
    return acc;
}

} // namespace cleanq::net
