#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cleanq/buffer.hpp"
#include "cleanq/error.hpp"
#include "cleanq/interval_set.hpp"
#include "cleanq/trace.hpp"

namespace cleanq::model {

/*
 * The ownership-transfer discipline as executable state machines at three
 * levels of abstraction, used as the oracle for every property and
 * differential test:
 *
 *   SetState   - owned byte-pools per region, unordered transfer sets
 *   ListState  - same pools, FIFO transfer lists
 *   RingModel  - FIFO lists bounded by a per-direction capacity
 *
 * plus HwRingModel, a four-pointer single-ring state machine in the style
 * of a NIC descriptor ring, kept as its own checked object.
 *
 * States are plain values: copy one to snapshot it. All operations mutate
 * in place and return the same error codes the production interface layer
 * would, so traces compare one to one.
 */

struct BufKey {
    uint32_t rid = 0;
    uint64_t off = 0;
    uint64_t len = 0;

    auto operator<=>(const BufKey&) const = default;
};

inline BufKey key_of(const BufferToken& b) { return BufKey{b.rid, b.offset, b.length}; }

/* Region bookkeeping and per-side owned byte-pools, shared by all levels. */
class OwnedPools {
public:
    struct RegionEntry {
        uint64_t length = 0;
        Side registrar = Side::A;

        friend bool operator==(const RegionEntry&, const RegionEntry&) = default;
    };

    ErrorCode reg(Side s, uint32_t rid, uint64_t len);
    /* Validates the full-ownership precondition; removes the region. */
    ErrorCode dereg(Side s, uint32_t rid);
    /* Validates bounds and ownership, then removes the bytes from s's pool. */
    ErrorCode take(Side s, const BufKey& b);
    /* Adds the bytes to s's pool (caller guarantees b refers to a live region). */
    void give(Side s, const BufKey& b);

    bool region_known(uint32_t rid) const { return regions_.count(rid) != 0; }
    const std::map<uint32_t, RegionEntry>& regions() const { return regions_; }
    const IntervalSet& owned(Side s, uint32_t rid) const;
    const std::map<uint32_t, IntervalSet>& owned_map(Side s) const {
        return owned_[static_cast<int>(s)];
    }

    friend bool operator==(const OwnedPools&, const OwnedPools&) = default;

private:
    std::map<uint32_t, RegionEntry> regions_;
    std::map<uint32_t, IntervalSet> owned_[2];
};

/* Level 0: transfer sets carry no order. */
class SetState {
public:
    ErrorCode reg(Side s, uint32_t rid, uint64_t len) { return pools_.reg(s, rid, len); }
    ErrorCode dereg(Side s, uint32_t rid) { return pools_.dereg(s, rid); }
    ErrorCode enq(Side s, const BufKey& b);
    /* Removes the smallest key; for generating runs. */
    ErrorCode deq_any(Side s, BufKey& out);
    /* Removes exactly b; for replaying an observed dequeue. */
    ErrorCode deq_expect(Side s, const BufKey& b);

    const std::set<BufKey>& q_ab() const { return q_[0]; }
    const std::set<BufKey>& q_ba() const { return q_[1]; }
    const OwnedPools& pools() const { return pools_; }

    /* First violated invariant, if any: disjointness, conservation, bounds. */
    std::optional<std::string> invariant_violation() const;

    friend bool operator==(const SetState&, const SetState&) = default;

private:
    OwnedPools pools_;
    std::set<BufKey> q_[2]; // [0] = A->B, [1] = B->A
};

/* Level 1: transfer lists preserve FIFO order. */
class ListState {
public:
    ErrorCode reg(Side s, uint32_t rid, uint64_t len) { return pools_.reg(s, rid, len); }
    ErrorCode dereg(Side s, uint32_t rid) { return pools_.dereg(s, rid); }
    ErrorCode enq(Side s, const BufKey& b);
    ErrorCode deq(Side s, BufKey& out); // always the front
    /* Front must equal b; for replay. */
    ErrorCode deq_expect(Side s, const BufKey& b);

    const std::deque<BufKey>& l_ab() const { return l_[0]; }
    const std::deque<BufKey>& l_ba() const { return l_[1]; }
    const OwnedPools& pools() const { return pools_; }

    std::optional<std::string> invariant_violation() const;

    friend bool operator==(const ListState&, const ListState&) = default;

private:
    friend class RingModel;
    OwnedPools pools_;
    std::deque<BufKey> l_[2];
};

/* Level 2: the production backend's shape, two capacity-bounded FIFOs. */
class RingModel {
public:
    explicit RingModel(uint32_t capacity) : capacity_(capacity) {}

    ErrorCode reg(Side s, uint32_t rid, uint64_t len) { return lists_.reg(s, rid, len); }
    ErrorCode dereg(Side s, uint32_t rid) { return lists_.dereg(s, rid); }
    ErrorCode enq(Side s, const BufKey& b);
    ErrorCode deq(Side s, BufKey& out) { return lists_.deq(s, out); }
    ErrorCode deq_expect(Side s, const BufKey& b) { return lists_.deq_expect(s, b); }

    uint32_t capacity() const { return capacity_; }
    const ListState& lists() const { return lists_; }

    std::optional<std::string> invariant_violation() const;

    friend bool operator==(const RingModel&, const RingModel&) = default;

private:
    uint32_t capacity_;
    ListState lists_;
};

/*
 * Four-pointer single-ring state machine: A produces descriptors at tail,
 * the consumer B takes them at head and hands them back in order at done,
 * and A reclaims at recl. Pointers are unwrapped; the slot for position p
 * is p mod capacity. The overtake guard keeps
 * recl <= done <= head <= tail <= recl + capacity.
 */
class HwRingModel {
public:
    explicit HwRingModel(uint32_t capacity) : capacity_(capacity), slots_(capacity) {}

    ErrorCode enq_a(const BufKey& b);
    ErrorCode deq_b(BufKey& out);
    ErrorCode enq_b(const BufKey& b); // must be the in-order return
    ErrorCode deq_a(BufKey& out);

    uint64_t recl() const { return recl_; }
    uint64_t done() const { return done_; }
    uint64_t head() const { return head_; }
    uint64_t tail() const { return tail_; }

    bool pointer_order_ok() const {
        return recl_ <= done_ && done_ <= head_ && head_ <= tail_ && tail_ <= recl_ + capacity_;
    }

    /* Removes the overtake guard so the pointer-order invariant can break. */
    void set_skip_full_check(bool on) { skip_full_check_ = on; }

private:
    uint32_t capacity_;
    std::vector<BufKey> slots_;
    uint64_t recl_ = 0, done_ = 0, head_ = 0, tail_ = 0;
    bool skip_full_check_ = false;
};

} // namespace cleanq::model
