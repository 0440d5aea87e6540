#include <doctest.h>

#include <atomic>
#include <cstring>
#include <sched.h>
#include <thread>
#include <vector>

#include "cleanq/bench/stress.hpp"
#include "cleanq/queue.hpp"
#include "cleanq/ringq.hpp"

using namespace cleanq;

namespace {

/* Ping-pong N round trips between two real threads over a ring pair.
 * A sends sequence-stamped buffers, B checks strict FIFO arrival and
 * a torn-write canary, then returns each buffer. Returns the number of
 * order or canary failures seen by either side. */
uint64_t ping_pong(RingPair& ring, size_t rounds, uint32_t buffers, uint64_t buffer_len) {
    auto table = std::make_shared<RegionTable>();
    Endpoint ea(Side::A, ring.a(), table);
    Endpoint eb(Side::B, ring.b(), table);

    std::vector<uint8_t> mem(buffers * buffer_len);
    uint32_t rid = 0;
    REQUIRE(ea.register_region(mem.data(), mem.size(), rid) == ErrorCode::OK);

    std::atomic<uint64_t> failures{0};

    std::thread side_a([&] {
        std::vector<bool> held(buffers, true);
        size_t sent = 0, back = 0;
        while (back < rounds) {
            bool progress = false;
            if (sent < rounds) {
                int i = -1;
                for (uint32_t k = 0; k < buffers; ++k)
                    if (held[k]) {
                        i = static_cast<int>(k);
                        break;
                    }
                if (i >= 0) {
                    BufferToken b;
                    b.rid = rid;
                    b.offset = static_cast<uint64_t>(i) * buffer_len;
                    b.length = buffer_len;
                    b.valid_length = buffer_len;
                    const uint64_t seq = sent;
                    const uint64_t canary = ~seq;
                    std::memcpy(mem.data() + b.offset, &seq, 8);
                    std::memcpy(mem.data() + b.offset + 8, &canary, 8);
                    if (ea.enqueue(b) == ErrorCode::OK) {
                        held[static_cast<size_t>(i)] = false;
                        ++sent;
                        progress = true;
                    }
                }
            }
            BufferToken out;
            if (ea.dequeue(out) == ErrorCode::OK) {
                held[out.offset / buffer_len] = true;
                ++back;
                progress = true;
            }
            if (!progress)
                sched_yield();
        }
    });

    std::thread side_b([&] {
        uint64_t expect = 0;
        while (expect < rounds) {
            BufferToken out;
            if (eb.dequeue(out) != ErrorCode::OK) {
                sched_yield();
                continue;
            }
            uint64_t seq = 0, canary = 0;
            std::memcpy(&seq, mem.data() + out.offset, 8);
            std::memcpy(&canary, mem.data() + out.offset + 8, 8);
            if (seq != expect || canary != ~seq)
                failures.fetch_add(1, std::memory_order_relaxed);
            ++expect;
            while (eb.enqueue(out) != ErrorCode::OK)
                sched_yield();
        }
    });

    side_a.join();
    side_b.join();
    return failures.load();
}

} // namespace

TEST_CASE("a million descriptors cross threads in order with their payloads") {
    auto ring = RingPair::create(64);
    REQUIRE(ring);
    CHECK(ping_pong(*ring, 1000000, 128, 64) == 0);
}

TEST_CASE("slot checksums observe no torn descriptor under load") {
    auto ring = RingPair::create(16);
    REQUIRE(ring);
    ring->enable_slot_checksums(true);
    CHECK(ping_pong(*ring, 300000, 32, 64) == 0);
    CHECK(ring->a().check_mismatches() == 0);
    CHECK(ring->b().check_mismatches() == 0);
}

TEST_CASE("a tiny ring forces constant backpressure and still loses nothing") {
    auto ring = RingPair::create(2);
    REQUIRE(ring);
    CHECK(ping_pong(*ring, 100000, 8, 64) == 0);
}

TEST_CASE("the concurrent soak checker accepts a clean threaded run") {
    cleanq::bench::StressOptions so;
    so.segments = 3;
    so.ops_per_segment = 30000;
    so.ring_capacity = 32;
    so.buffers = 16;
    so.buffer_len = 128;
    const cleanq::bench::StressResult r = cleanq::bench::run_stress(so);
    CHECK(r.ok);
    CHECK(r.transfers == 90000);
    CHECK(r.stamp_mismatches == 0);
    CHECK(r.conservation_ok);
}
