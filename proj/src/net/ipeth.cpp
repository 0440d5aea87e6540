#include "cleanq/net/ipeth.hpp"

#include <cstring>

#include "cleanq/net/checksum.hpp"

namespace cleanq::net {

namespace {

constexpr uint64_t kStackLen = kEthHeaderLen + kIpHeaderLen; /* 34 */
constexpr uint16_t kEtherTypeIp = 0x0800;
constexpr uint16_t kFlagsDf = 0x4000;

} // namespace

ErrorCode IpEthModule::enqueue(const BufferToken& b) {
    if (dir_ == Dir::Rx)
        return lower().enqueue(b);

    const RegionInfo* region = region_of(b.rid);
    if (!region)
        return ErrorCode::INVALID_BUFFER;
    if (b.valid_data < kStackLen)
        return ErrorCode::INVALID_BUFFER;
    const uint64_t ip_total = b.valid_length + kIpHeaderLen;
    if (ip_total > cfg_.mtu || ip_total > 0xFFFF)
        return ErrorCode::INVALID_BUFFER;

    BufferToken t = b;
    t.valid_data -= kStackLen;
    t.valid_length += kStackLen;

    uint8_t* eth = bytes_at(*region, t.offset + t.valid_data);
    std::memcpy(eth + 0, cfg_.dst_mac.b, 6);
    std::memcpy(eth + 6, cfg_.src_mac.b, 6);
    wr16(eth + 12, kEtherTypeIp);

    uint8_t* ip = eth + kEthHeaderLen;
    ip[0] = 0x45; /* v4, 20-byte header */
    ip[1] = 0;
    wr16(ip + 2, static_cast<uint16_t>(ip_total));
    wr16(ip + 4, ident_++);
    wr16(ip + 6, kFlagsDf);
    ip[8] = 64; /* ttl */
    ip[9] = 17; /* udp */
    wr16(ip + 10, 0);
    wr32(ip + 12, cfg_.src_ip);
    wr32(ip + 16, cfg_.dst_ip);
    wr16(ip + 10, inet_checksum(ip, kIpHeaderLen));

    return lower().enqueue(t);
}

ErrorCode IpEthModule::dequeue(BufferToken& out) {
    const ErrorCode r = lower().dequeue(out);
    if (r != ErrorCode::OK)
        return r;

    if (dir_ == Dir::Tx) {
        out.valid_data += kStackLen;
        out.valid_length -= kStackLen;
        return r;
    }

    if (out.flags & kDropFlag)
        return r;

    const RegionInfo* region = region_of(out.rid);
    if (!region || out.valid_length < kStackLen) {
        out.flags |= kDropFlag;
        return r;
    }

    const uint8_t* eth = bytes_at(*region, out.offset + out.valid_data);
    const uint8_t* ip = eth + kEthHeaderLen;
    const uint16_t total = rd16(ip + 2);
    const uint16_t frag = rd16(ip + 6);

    const bool ok = rd16(eth + 12) == kEtherTypeIp &&
                    std::memcmp(eth + 0, cfg_.src_mac.b, 6) == 0 &&
                    std::memcmp(eth + 6, cfg_.dst_mac.b, 6) == 0 &&
                    ip[0] == 0x45 && ip[9] == 17 &&
                    inet_checksum(ip, kIpHeaderLen) == 0 &&
                    (frag == kFlagsDf || frag == 0) &&
                    rd32(ip + 12) == cfg_.dst_ip && rd32(ip + 16) == cfg_.src_ip &&
                    total >= kIpHeaderLen &&
                    total <= out.valid_length - kEthHeaderLen;
    if (!ok) {
        out.flags |= kDropFlag;
        return r;
    }

    out.valid_data += kStackLen;
    out.valid_length = total - kIpHeaderLen; /* drops link-layer padding */
    return r;
}

} // namespace cleanq::net
