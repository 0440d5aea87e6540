#include "cleanq/net/udp.hpp"

#include "cleanq/net/checksum.hpp"

namespace cleanq::net {

ErrorCode UdpModule::enqueue(const BufferToken& b) {
    if (dir_ == Dir::Rx)
        return lower().enqueue(b); /* free buffer headed for the device */

    const RegionInfo* region = region_of(b.rid);
    if (!region)
        return ErrorCode::INVALID_BUFFER;
    if (b.valid_data < kUdpHeaderLen)
        return ErrorCode::INVALID_BUFFER; /* no room for the header */
    if (b.valid_length + kUdpHeaderLen > 0xFFFF)
        return ErrorCode::INVALID_BUFFER; /* length field would overflow */

    BufferToken t = b;
    t.valid_data -= kUdpHeaderLen;
    t.valid_length += kUdpHeaderLen;

    const uint16_t udp_len = static_cast<uint16_t>(t.valid_length);
    uint8_t* h = bytes_at(*region, t.offset + t.valid_data);
    wr16(h + 0, cfg_.src_port);
    wr16(h + 2, cfg_.dst_port);
    wr16(h + 4, udp_len);
    wr16(h + 6, 0);

    uint64_t acc = udp_pseudo_sum(cfg_.src_ip, cfg_.dst_ip, udp_len);
    acc = checksum_add(acc, h, udp_len);
    uint16_t ck = checksum_finish(acc);
    if (ck == 0)
        ck = 0xFFFF; /* zero on the wire means "no checksum" */
    wr16(h + 6, ck);

    return lower().enqueue(t);
}

ErrorCode UdpModule::dequeue(BufferToken& out) {
    const ErrorCode r = lower().dequeue(out);
    if (r != ErrorCode::OK)
        return r;

    if (dir_ == Dir::Tx) {
        /* Send completion: the token we widened comes home. */
        out.valid_data += kUdpHeaderLen;
        out.valid_length -= kUdpHeaderLen;
        return r;
    }

    if (out.flags & kDropFlag)
        return r; /* already condemned below us */

    const RegionInfo* region = region_of(out.rid);
    if (!region || out.valid_length < kUdpHeaderLen) {
        out.flags |= kDropFlag;
        return r;
    }

    const uint8_t* h = bytes_at(*region, out.offset + out.valid_data);
    const uint16_t src_port = rd16(h + 0);
    const uint16_t dst_port = rd16(h + 2);
    const uint16_t udp_len = rd16(h + 4);
    const uint16_t ck = rd16(h + 6);

    if (dst_port != cfg_.src_port || src_port != cfg_.dst_port ||
        udp_len != out.valid_length) {
        out.flags |= kDropFlag;
        return r;
    }

    if (cfg_.verify_rx_udp_checksum && ck != 0) {
        /* Sender's pseudo-header: its src is our peer. */
        uint64_t acc = udp_pseudo_sum(cfg_.dst_ip, cfg_.src_ip, udp_len);
        acc = checksum_add(acc, h, udp_len);
        if (checksum_finish(acc) != 0) {
            out.flags |= kDropFlag;
            return r;
        }
    }

    out.valid_data += kUdpHeaderLen;
    out.valid_length -= kUdpHeaderLen;
    return r;
}

} // namespace cleanq::net
