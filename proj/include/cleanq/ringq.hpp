#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "cleanq/queue.hpp"

namespace cleanq {

/*
 * Production backend: two bounded SPSC descriptor rings (one per
 * direction). Each slot carries its own full/empty word; the producer's
 * release store on that word publishes the descriptor and every payload
 * byte the client wrote before enqueueing, and the consumer's acquire load
 * picks both up. No pointer is shared between the sides, so the only
 * cross-thread traffic is the slot lines themselves.
 */

inline constexpr uint8_t kSegmentMagic[4] = {0x43, 0x4C, 0x4E, 0x51}; // "CLNQ"
inline constexpr uint32_t kSegmentVersion = 1;

struct SegmentHeader {
    uint8_t magic[4];
    uint32_t version;
    uint32_t capacity; // slots per ring
    uint32_t reserved;
    uint64_t ring_off[2]; // byte offsets of the A->B and B->A rings
};
static_assert(sizeof(SegmentHeader) == 32);

inline constexpr uint64_t kSlotEmpty = 0;
inline constexpr uint64_t kSlotFull = 1;

/*
 * One descriptor slot: 64 bytes, little-endian fields, one cache line.
 * `check` is zero in normal operation; with slot checksumming enabled the
 * producer writes a mix of the payload fields there so tests can prove the
 * consumer never observes a torn descriptor.
 */
struct alignas(64) RingSlot {
    uint32_t rid;
    uint32_t pad0;
    uint64_t offset;
    uint64_t length;
    uint64_t valid_data;
    uint64_t valid_length;
    uint64_t flags;
    std::atomic<uint64_t> state;
    uint64_t check;
};

static_assert(sizeof(RingSlot) == 64);
static_assert(std::is_standard_layout_v<RingSlot>);
static_assert(offsetof(RingSlot, rid) == 0);
static_assert(offsetof(RingSlot, offset) == 8);
static_assert(offsetof(RingSlot, length) == 16);
static_assert(offsetof(RingSlot, valid_data) == 24);
static_assert(offsetof(RingSlot, valid_length) == 32);
static_assert(offsetof(RingSlot, flags) == 40);
static_assert(offsetof(RingSlot, state) == 48);
static_assert(sizeof(std::atomic<uint64_t>) == 8);
static_assert(std::atomic<uint64_t>::is_always_lock_free);
static_assert(std::endian::native == std::endian::little,
              "the shared segment layout is defined little-endian");

/* Test-only switches that sabotage the protocol on purpose. */
struct RingFaults {
    bool skip_full_check = false; // removes the overtake guard
    bool relaxed_order = false;   // drops acquire/release (vacuous on TSO hosts)
};

class RingPair;

class RingEndpoint final : public QueueModule {
public:
    ErrorCode enqueue(const BufferToken& b) override;
    ErrorCode dequeue(BufferToken& out) override;
    ErrorCode register_region(const RegionInfo&) override { return ErrorCode::OK; }
    ErrorCode deregister_region(uint32_t) override { return ErrorCode::OK; }
    ErrorCode notify() override;

    void set_faults(const RingFaults& f) { faults_ = f; }
    uint64_t produced() const { return tail_; }
    uint64_t consumed() const { return head_; }
    uint64_t check_mismatches() const { return check_mismatches_.load(std::memory_order_relaxed); }

private:
    friend class RingPair;

    RingSlot* tx_ = nullptr;
    RingSlot* rx_ = nullptr;
    uint32_t mask_ = 0;
    uint64_t tail_ = 0; // next tx slot, unwrapped
    uint64_t head_ = 0; // next rx slot, unwrapped
    bool checksum_slots_ = false;
    RingFaults faults_;
    std::atomic<uint64_t> check_mismatches_{0};
    std::function<void()>* peer_hook_ = nullptr;
};

/*
 * Owns the segment and both endpoint objects. In-process pairs allocate on
 * the heap; the shared-memory variant maps a named segment with the same
 * bit-exact layout, so a second process (or a second mapping) can attach
 * and drive the other side.
 */
class RingPair {
public:
    static std::unique_ptr<RingPair> create(uint32_t capacity, ErrorCode* err = nullptr);
    static std::unique_ptr<RingPair> create_shm(const std::string& name, uint32_t capacity,
                                                ErrorCode* err = nullptr);
    static std::unique_ptr<RingPair> attach_shm(const std::string& name, ErrorCode* err = nullptr);

    ~RingPair();
    RingPair(const RingPair&) = delete;
    RingPair& operator=(const RingPair&) = delete;

    RingEndpoint& endpoint(Side s) { return eps_[static_cast<int>(s)]; }
    RingEndpoint& a() { return eps_[0]; }
    RingEndpoint& b() { return eps_[1]; }

    uint32_t capacity() const { return capacity_; }
    const uint8_t* segment_bytes() const { return static_cast<const uint8_t*>(seg_); }
    size_t segment_size() const { return seg_size_; }

    /* Doorbell hooks are per-process state, not part of the segment. */
    void set_notify_hook(Side for_side, std::function<void()> fn);
    /* Slot checksumming for torn-descriptor detection in tests. */
    void enable_slot_checksums(bool on);
    void set_faults(const RingFaults& f);

private:
    RingPair() = default;
    void wire_endpoints();

    void* seg_ = nullptr;
    size_t seg_size_ = 0;
    uint32_t capacity_ = 0;
    bool heap_ = false;
    bool shm_owner_ = false;
    std::string shm_name_;
    RingEndpoint eps_[2];
    std::function<void()> hooks_[2];
};

} // namespace cleanq
