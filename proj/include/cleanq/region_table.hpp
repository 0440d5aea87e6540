#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "cleanq/error.hpp"
#include "cleanq/trace.hpp"

namespace cleanq {

/* A registered region as seen by modules and backends: the rid has already
 * been allocated and the range vetted by the endpoint layer. */
struct RegionInfo {
    uint32_t rid = 0;
    std::byte* base = nullptr;
    uint64_t length = 0;
};

/*
 * Registry shared by the two endpoints of a queue pair. Lookups are
 * lock-free (per-slot seqlock, linear probing from rid & mask); mutations
 * are rare and serialize on a mutex. rids count up from 0 and are never
 * reused, so a stale token misses its slot stamp instead of silently
 * aliasing a new region.
 *
 * Each slot carries per-side owned-byte counters. The endpoint layer debits
 * the caller on enqueue and credits it on dequeue; deregister requires the
 * caller to own every byte, which is exactly held[side] == length as long
 * as clients respect the ownership contract.
 */
class RegionTable {
public:
    static constexpr uint32_t kDefaultSlots = 256;

    explicit RegionTable(uint32_t slots = kDefaultSlots);
    ~RegionTable();

    RegionTable(const RegionTable&) = delete;
    RegionTable& operator=(const RegionTable&) = delete;

    ErrorCode allocate(Side registrar, std::byte* base, uint64_t length, uint32_t& rid_out);
    /* Roll back an allocate whose downstream register hook failed. */
    void drop(uint32_t rid);
    ErrorCode remove(Side caller, uint32_t rid);

    bool lookup(uint32_t rid, RegionInfo& out) const;

    void on_transfer_out(Side s, uint32_t rid, uint64_t bytes);
    void on_transfer_in(Side s, uint32_t rid, uint64_t bytes);
    int64_t held_bytes(Side s, uint32_t rid) const;

    uint32_t live_count() const;

private:
    struct Slot {
        std::atomic<uint64_t> seq{0}; // even: stable; odd: mutating
        uint64_t rid = 0;
        std::byte* base = nullptr;
        uint64_t length = 0;
        bool used = false; // stamped at least once (probe chains continue across it)
        bool live = false;
        std::atomic<int64_t> held[2] = {0, 0};
    };

    Slot* find_slot(uint32_t rid);             // caller holds mu_
    const Slot* find_slot(uint32_t rid) const; // caller holds mu_
    Slot* probe_live(uint32_t rid);            // lock-free, seqlock-validated

    uint32_t mask_;
    std::vector<Slot> slots_;
    mutable std::mutex mu_;
    uint32_t next_rid_ = 0;
};

} // namespace cleanq
