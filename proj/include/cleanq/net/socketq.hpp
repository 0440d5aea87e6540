#pragma once

#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "cleanq/net/flow.hpp"
#include "cleanq/queue.hpp"

namespace cleanq::net {

struct SocketConfig {
    std::string bind_host = "127.0.0.1";
    uint16_t bind_port = 0;   /* 0 picks an ephemeral port */
    std::string peer_host = {};
    uint16_t peer_port = 0;   /* 0: call connect_peer() later */
    size_t tx_batch = 1;      /* enqueues buffered before a send burst */
};

/*
 * Datagram-socket backend shaped like a two-queue NIC. The send side
 * turns enqueued frames into datagrams (one per frame) and hands the
 * buffers back as completions; the receive side is fed free buffers
 * and returns them filled, one datagram each. Frames ride inside host
 * UDP, so two devices, same machine or not, form a wire.
 *
 * Both queue faces share one socket and one region map. Addresses are
 * numeric (inet_pton); the device is single-threaded like every other
 * backend here.
 */
class SocketDevice {
public:
    static std::unique_ptr<SocketDevice> create(const SocketConfig& cfg,
                                                ErrorCode* err = nullptr);
    ~SocketDevice();

    SocketDevice(const SocketDevice&) = delete;
    SocketDevice& operator=(const SocketDevice&) = delete;

    QueueModule& tx() { return tx_; }
    QueueModule& rx() { return rx_; }

    uint16_t local_port() const { return local_port_; }
    ErrorCode connect_peer(const std::string& host, uint16_t port);

private:
    explicit SocketDevice(const SocketConfig& cfg);

    class TxQueue final : public QueueModule {
    public:
        explicit TxQueue(SocketDevice& dev) : dev_(dev) {}
        ErrorCode enqueue(const BufferToken& b) override { return dev_.tx_enqueue(b); }
        ErrorCode dequeue(BufferToken& out) override { return dev_.tx_dequeue(out); }
        ErrorCode register_region(const RegionInfo& r) override { return dev_.learn(r); }
        ErrorCode deregister_region(uint32_t rid) override { return dev_.forget(rid); }
        ErrorCode notify() override { return dev_.flush(); }

    private:
        SocketDevice& dev_;
    };

    class RxQueue final : public QueueModule {
    public:
        explicit RxQueue(SocketDevice& dev) : dev_(dev) {}
        ErrorCode enqueue(const BufferToken& b) override { return dev_.rx_enqueue(b); }
        ErrorCode dequeue(BufferToken& out) override { return dev_.rx_dequeue(out); }
        ErrorCode register_region(const RegionInfo& r) override { return dev_.learn(r); }
        ErrorCode deregister_region(uint32_t rid) override { return dev_.forget(rid); }
        ErrorCode notify() override { return ErrorCode::OK; }

    private:
        SocketDevice& dev_;
    };

    ErrorCode learn(const RegionInfo& r);
    ErrorCode forget(uint32_t rid);
    const RegionInfo* region_of(uint32_t rid) const;

    ErrorCode tx_enqueue(const BufferToken& b);
    ErrorCode tx_dequeue(BufferToken& out);
    ErrorCode flush();
    ErrorCode rx_enqueue(const BufferToken& b);
    ErrorCode rx_dequeue(BufferToken& out);

    int fd_ = -1;
    uint16_t local_port_ = 0;
    bool connected_ = false;
    size_t tx_batch_ = 1;

    std::vector<RegionInfo> regions_;
    std::vector<BufferToken> tx_pending_;
    std::deque<BufferToken> tx_done_;
    std::deque<BufferToken> rx_free_;

    TxQueue tx_;
    RxQueue rx_;
};

} // namespace cleanq::net
