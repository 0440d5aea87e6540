#include "cleanq/bench/scenarios.hpp"

#include <cstring>
#include <memory>
#include <sched.h>

#include "cleanq/debugq.hpp"
#include "cleanq/loopback.hpp"
#include "cleanq/net/flow.hpp"
#include "cleanq/net/ipeth.hpp"
#include "cleanq/net/socketq.hpp"
#include "cleanq/net/udp.hpp"
#include "cleanq/nullq.hpp"
#include "cleanq/queue.hpp"

namespace cleanq::bench {

namespace {

BufferToken whole_buffer(uint32_t rid, uint64_t len) {
    BufferToken b;
    b.rid = rid;
    b.length = len;
    b.valid_length = len;
    return b;
}

} // namespace

OpCosts bench_ops(size_t iters) {
    OpCosts out;
    const TickCalibration& cal = tick_calibration();
    auto table = std::make_shared<RegionTable>();
    LoopbackQueue loop;
    Endpoint ep(Side::A, loop, table);
    std::vector<uint8_t> mem(4096);

    std::vector<double> reg_ns, dereg_ns;
    reg_ns.reserve(iters);
    dereg_ns.reserve(iters);
    for (size_t i = 0; i < iters; ++i) {
        uint32_t rid = 0;
        const uint64_t t0 = tick_now();
        ep.register_region(mem.data(), mem.size(), rid);
        const uint64_t t1 = tick_now();
        ep.deregister_region(rid);
        const uint64_t t2 = tick_now();
        reg_ns.push_back(static_cast<double>(t1 - t0) * cal.ns_per_tick);
        dereg_ns.push_back(static_cast<double>(t2 - t1) * cal.ns_per_tick);
    }
    out.reg = finalize(std::move(reg_ns));
    out.dereg = finalize(std::move(dereg_ns));

    uint32_t rid = 0;
    ep.register_region(mem.data(), mem.size(), rid);
    const BufferToken b = whole_buffer(rid, mem.size());

    std::vector<double> enq_ns, deq_ns;
    enq_ns.reserve(iters);
    deq_ns.reserve(iters);
    for (size_t i = 0; i < iters; ++i) {
        BufferToken got;
        const uint64_t t0 = tick_now();
        ep.enqueue(b);
        const uint64_t t1 = tick_now();
        ep.dequeue(got);
        const uint64_t t2 = tick_now();
        enq_ns.push_back(static_cast<double>(t1 - t0) * cal.ns_per_tick);
        deq_ns.push_back(static_cast<double>(t2 - t1) * cal.ns_per_tick);
    }
    out.enq = finalize(std::move(enq_ns));
    out.deq = finalize(std::move(deq_ns));

    std::vector<double> enqd_ns, deqd_ns;
    enqd_ns.reserve(iters);
    deqd_ns.reserve(iters);
    for (size_t i = 0; i < iters; ++i) {
        BufferToken got;
        const uint64_t t0 = tick_now();
        loop.enqueue(b);
        const uint64_t t1 = tick_now();
        loop.dequeue(got);
        const uint64_t t2 = tick_now();
        enqd_ns.push_back(static_cast<double>(t1 - t0) * cal.ns_per_tick);
        deqd_ns.push_back(static_cast<double>(t2 - t1) * cal.ns_per_tick);
    }
    out.enq_direct = finalize(std::move(enqd_ns));
    out.deq_direct = finalize(std::move(deqd_ns));
    return out;
}

StackCosts bench_stack(size_t iters, size_t max_depth) {
    StackCosts out;
    const TickCalibration& cal = tick_calibration();
    std::vector<uint8_t> mem(4096);

    for (size_t depth = 0; depth <= max_depth; ++depth) {
        LoopbackQueue loop;
        std::vector<std::unique_ptr<NullModule>> chain;
        QueueModule* top = &loop;
        for (size_t d = 0; d < depth; ++d) {
            chain.push_back(std::make_unique<NullModule>(*top));
            top = chain.back().get();
        }
        auto table = std::make_shared<RegionTable>();
        Endpoint ep(Side::A, *top, table);
        uint32_t rid = 0;
        ep.register_region(mem.data(), mem.size(), rid);
        const BufferToken b = whole_buffer(rid, mem.size());

        std::vector<double> ns;
        ns.reserve(iters);
        for (size_t i = 0; i < iters; ++i) {
            BufferToken got;
            const uint64_t t0 = tick_now();
            ep.enqueue(b);
            const uint64_t t1 = tick_now();
            ep.dequeue(got);
            ns.push_back(static_cast<double>(t1 - t0) * cal.ns_per_tick);
        }
        out.enq_at_depth.push_back(finalize(std::move(ns)));
    }
    return out;
}

DebugCosts bench_debug(size_t iters) {
    DebugCosts out;
    std::vector<uint8_t> mem(4096);

    {
        LoopbackQueue loop;
        auto table = std::make_shared<RegionTable>();
        Endpoint ep(Side::A, loop, table);
        uint32_t rid = 0;
        ep.register_region(mem.data(), mem.size(), rid);
        const BufferToken b = whole_buffer(rid, mem.size());
        out.bare = measure(iters, [&] {
            BufferToken got;
            ep.enqueue(b);
            ep.dequeue(got);
        });
    }
    {
        LoopbackQueue loop;
        auto table = std::make_shared<RegionTable>();
        DebugOptions dopt;
        dopt.side = Side::A;
        dopt.table = table;
        DebugModule dbg(loop, dopt);
        Endpoint ep(Side::A, dbg, table);
        uint32_t rid = 0;
        ep.register_region(mem.data(), mem.size(), rid);
        const BufferToken b = whole_buffer(rid, mem.size());
        out.debug = measure(iters, [&] {
            BufferToken got;
            ep.enqueue(b);
            ep.dequeue(got);
        });
    }
    return out;
}

Summary bench_echo(size_t rounds) {
    using namespace net;

    auto cdev = SocketDevice::create({});
    auto sdev = SocketDevice::create({});
    if (!cdev || !sdev)
        return Summary{};
    if (cdev->connect_peer("127.0.0.1", sdev->local_port()) != ErrorCode::OK ||
        sdev->connect_peer("127.0.0.1", cdev->local_port()) != ErrorCode::OK)
        return Summary{};

    FlowConfig cf;
    cf.src_mac.b[0] = 0x02;
    cf.src_mac.b[5] = 0x01;
    cf.dst_mac.b[0] = 0x02;
    cf.dst_mac.b[5] = 0x02;
    cf.src_ip = 0xC0A80001;
    cf.dst_ip = 0xC0A800C7;
    cf.src_port = 7000;
    cf.dst_port = 7001;
    FlowConfig sf = cf;
    std::swap(sf.src_mac, sf.dst_mac);
    std::swap(sf.src_ip, sf.dst_ip);
    std::swap(sf.src_port, sf.dst_port);

    IpEthModule c_ip_tx(cdev->tx(), cf, Dir::Tx);
    UdpModule c_udp_tx(c_ip_tx, cf, Dir::Tx);
    IpEthModule c_ip_rx(cdev->rx(), cf, Dir::Rx);
    UdpModule c_udp_rx(c_ip_rx, cf, Dir::Rx);
    IpEthModule s_ip_tx(sdev->tx(), sf, Dir::Tx);
    UdpModule s_udp_tx(s_ip_tx, sf, Dir::Tx);
    IpEthModule s_ip_rx(sdev->rx(), sf, Dir::Rx);
    UdpModule s_udp_rx(s_ip_rx, sf, Dir::Rx);

    auto ctab = std::make_shared<RegionTable>();
    auto stab = std::make_shared<RegionTable>();
    Endpoint c_tx(Side::A, c_udp_tx, ctab);
    Endpoint c_rx(Side::A, c_udp_rx, ctab);
    Endpoint s_tx(Side::A, s_udp_tx, stab);
    Endpoint s_rx(Side::A, s_udp_rx, stab);

    constexpr uint64_t kBuf = 2048;
    std::vector<uint8_t> ctm(kBuf), crm(kBuf), stm(kBuf), srm(kBuf);
    uint32_t ct = 0, cr = 0, st = 0, sr = 0;
    c_tx.register_region(ctm.data(), kBuf, ct);
    c_rx.register_region(crm.data(), kBuf, cr);
    s_tx.register_region(stm.data(), kBuf, st);
    s_rx.register_region(srm.data(), kBuf, sr);
    c_rx.enqueue(whole_buffer(cr, kBuf));
    s_rx.enqueue(whole_buffer(sr, kBuf));

    auto spin_deq = [](Endpoint& ep, BufferToken& out) {
        for (;;) {
            if (ep.dequeue(out) == ErrorCode::OK)
                return;
            sched_yield();
        }
    };

    const TickCalibration& cal = tick_calibration();
    std::vector<double> ns;
    ns.reserve(rounds);
    for (size_t i = 0; i < rounds; ++i) {
        const uint64_t t0 = tick_now();

        BufferToken b = whole_buffer(ct, kBuf);
        b.valid_data = kFrameHeadroom;
        b.valid_length = 64;
        ctm[kFrameHeadroom] = static_cast<uint8_t>(i);
        c_tx.enqueue(b);
        BufferToken done;
        c_tx.dequeue(done);

        BufferToken got;
        spin_deq(s_rx, got);
        BufferToken rep = whole_buffer(st, kBuf);
        rep.valid_data = kFrameHeadroom;
        rep.valid_length = 64;
        std::memcpy(stm.data() + kFrameHeadroom, srm.data() + got.valid_data, 64);
        s_tx.enqueue(rep);
        BufferToken sdone;
        s_tx.dequeue(sdone);
        s_rx.enqueue(whole_buffer(sr, kBuf));

        BufferToken echo;
        spin_deq(c_rx, echo);
        c_rx.enqueue(whole_buffer(cr, kBuf));

        const uint64_t t1 = tick_now();
        ns.push_back(static_cast<double>(t1 - t0) * cal.ns_per_tick);
    }
    return finalize(std::move(ns));
}

} // namespace cleanq::bench
