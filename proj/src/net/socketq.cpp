#include "cleanq/net/socketq.hpp"

#include <arpa/inet.h>
#include <cerrno>
#include <cstring>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

namespace cleanq::net {

namespace {

bool make_addr(const std::string& host, uint16_t port, sockaddr_in& out) {
    std::memset(&out, 0, sizeof(out));
    out.sin_family = AF_INET;
    out.sin_port = htons(port);
    return inet_pton(AF_INET, host.c_str(), &out.sin_addr) == 1;
}

} // namespace

SocketDevice::SocketDevice(const SocketConfig& cfg)
    : tx_batch_(cfg.tx_batch ? cfg.tx_batch : 1), tx_(*this), rx_(*this) {}

std::unique_ptr<SocketDevice> SocketDevice::create(const SocketConfig& cfg,
                                                   ErrorCode* err) {
    auto fail = [&](ErrorCode e) {
        if (err)
            *err = e;
        return nullptr;
    };

    std::unique_ptr<SocketDevice> dev(new SocketDevice(cfg));
    dev->fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (dev->fd_ < 0)
        return fail(ErrorCode::BACKEND_ERROR);

    sockaddr_in addr;
    if (!make_addr(cfg.bind_host, cfg.bind_port, addr))
        return fail(ErrorCode::BACKEND_ERROR);
    if (::bind(dev->fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
        return fail(ErrorCode::BACKEND_ERROR);

    sockaddr_in bound;
    socklen_t blen = sizeof(bound);
    if (::getsockname(dev->fd_, reinterpret_cast<sockaddr*>(&bound), &blen) != 0)
        return fail(ErrorCode::BACKEND_ERROR);
    dev->local_port_ = ntohs(bound.sin_port);

    if (cfg.peer_port != 0) {
        const ErrorCode e = dev->connect_peer(cfg.peer_host, cfg.peer_port);
        if (e != ErrorCode::OK)
            return fail(e);
    }

    if (err)
        *err = ErrorCode::OK;
    return dev;
}

SocketDevice::~SocketDevice() {
    if (fd_ >= 0)
        ::close(fd_);
}

ErrorCode SocketDevice::connect_peer(const std::string& host, uint16_t port) {
    sockaddr_in addr;
    if (!make_addr(host, port, addr))
        return ErrorCode::BACKEND_ERROR;
    if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
        return ErrorCode::BACKEND_ERROR;
    connected_ = true;
    return ErrorCode::OK;
}

ErrorCode SocketDevice::learn(const RegionInfo& r) {
    forget(r.rid);
    regions_.push_back(r);
    return ErrorCode::OK;
}

ErrorCode SocketDevice::forget(uint32_t rid) {
    for (size_t i = 0; i < regions_.size(); ++i) {
        if (regions_[i].rid == rid) {
            regions_[i] = regions_.back();
            regions_.pop_back();
            break;
        }
    }
    return ErrorCode::OK;
}

const RegionInfo* SocketDevice::region_of(uint32_t rid) const {
    for (const RegionInfo& r : regions_)
        if (r.rid == rid)
            return &r;
    return nullptr;
}

ErrorCode SocketDevice::tx_enqueue(const BufferToken& b) {
    if (!region_of(b.rid))
        return ErrorCode::INVALID_BUFFER;
    tx_pending_.push_back(b);
    if (tx_pending_.size() >= tx_batch_)
        return flush();
    return ErrorCode::OK;
}

ErrorCode SocketDevice::flush() {
    if (!connected_ && !tx_pending_.empty())
        return ErrorCode::BACKEND_ERROR;
    while (!tx_pending_.empty()) {
        const BufferToken t = tx_pending_.front();
        const RegionInfo* region = region_of(t.rid);
        if (!region)
            return ErrorCode::INVALID_BUFFER; /* deregistered while pending */
        const uint8_t* frame =
            reinterpret_cast<const uint8_t*>(region->base) + t.offset + t.valid_data;
        const ssize_t n = ::send(fd_, frame, t.valid_length, 0);
        if (n < 0 || static_cast<uint64_t>(n) != t.valid_length)
            return ErrorCode::BACKEND_ERROR;
        tx_pending_.erase(tx_pending_.begin());
        tx_done_.push_back(t);
    }
    return ErrorCode::OK;
}

ErrorCode SocketDevice::tx_dequeue(BufferToken& out) {
    if (tx_done_.empty())
        return ErrorCode::QUEUE_EMPTY;
    out = tx_done_.front();
    tx_done_.pop_front();
    return ErrorCode::OK;
}

ErrorCode SocketDevice::rx_enqueue(const BufferToken& b) {
    if (!region_of(b.rid))
        return ErrorCode::INVALID_BUFFER;
    rx_free_.push_back(b);
    return ErrorCode::OK;
}

ErrorCode SocketDevice::rx_dequeue(BufferToken& out) {
    if (rx_free_.empty())
        return ErrorCode::QUEUE_EMPTY; /* device starved of buffers */

    BufferToken b = rx_free_.front();
    const RegionInfo* region = region_of(b.rid);
    if (!region) {
        rx_free_.pop_front();
        return ErrorCode::INVALID_BUFFER;
    }

    uint8_t* dst = reinterpret_cast<uint8_t*>(region->base) + b.offset;
    const ssize_t n = ::recv(fd_, dst, b.length, MSG_DONTWAIT | MSG_TRUNC);
    if (n < 0) {
        if (errno == EAGAIN || errno == EWOULDBLOCK)
            return ErrorCode::QUEUE_EMPTY; /* buffer stays queued */
        return ErrorCode::BACKEND_ERROR;
    }

    rx_free_.pop_front();
    out = b;
    out.valid_data = 0;
    out.flags &= ~kDropFlag;
    if (static_cast<uint64_t>(n) > b.length) {
        out.valid_length = b.length; /* datagram truncated into the buffer */
        out.flags |= kDropFlag;
    } else {
        out.valid_length = static_cast<uint64_t>(n);
    }
    return ErrorCode::OK;
}

} // namespace cleanq::net
