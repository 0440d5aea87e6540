#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "cleanq/interval_set.hpp"
#include "cleanq/queue.hpp"
#include "cleanq/region_table.hpp"
#include "cleanq/trace.hpp"

namespace cleanq {

struct DebugOptions {
    Side side = Side::A;        // actor label stamped on op-log events
    size_t log_capacity = 4096; // most recent ops kept for dumping
    /* With a region table the module can bounds-check buffers it first
     * sees on dequeue; without one it only tracks what flowed past it. */
    std::shared_ptr<const RegionTable> table = nullptr;
};

/*
 * Contract-checking layer for one side of a queue pair. Keeps this side's
 * view of the bytes it holds in every region it has seen and refuses to
 * forward operations that would break the ownership discipline:
 *
 *  - enqueueing bytes this side does not hold (a duplicate, an overlap
 *    with an in-flight buffer, an unknown region) fails with
 *    OWNERSHIP_VIOLATION and never reaches the lower module;
 *  - a dequeue whose returned buffer overlaps bytes already held, or sits
 *    outside its region, surfaces as OWNERSHIP_VIOLATION instead of
 *    silently corrupting the ledger;
 *  - re-registering a known rid and deregistering a region whose bytes
 *    are not all home are rejected before forwarding.
 *
 * Regions registered through this module are tracked from birth; buffers
 * from regions the peer registered are learned on first dequeue.
 *
 * Every call lands in a bounded ring of trace events. Timestamps are raw
 * ticks at record time and become monotonic nanoseconds on dump, keeping
 * the per-op cost to one counter read.
 */
class DebugModule final : public PassthroughModule {
public:
    explicit DebugModule(QueueModule& lower, DebugOptions opts = {});

    ErrorCode enqueue(const BufferToken& b) override;
    ErrorCode dequeue(BufferToken& out) override;
    ErrorCode register_region(const RegionInfo& r) override;
    ErrorCode deregister_region(uint32_t rid) override;

    uint64_t violations() const { return violations_; }
    const std::string& last_violation() const { return last_violation_; }

    /* Bytes this side currently holds in rid, or nullptr if never seen. */
    const IntervalSet* held(uint32_t rid) const;

    size_t log_size() const { return log_size_; }
    void clear_log();
    void dump_log(std::ostream& os) const; // JSONL, oldest event first

private:
    struct Entry {
        uint32_t rid = 0;
        IntervalSet held;
        uint64_t bound = 0;
        bool bound_known = false;
    };

    Entry* find(uint32_t rid);
    Entry& find_or_create(uint32_t rid);
    void flag(std::string why);
    void log(OpKind op, uint32_t rid, uint64_t off, uint64_t len, ErrorCode result);

    DebugOptions opts_;
    std::vector<Entry> entries_;
    std::vector<TraceEvent> ring_;
    size_t log_next_ = 0; // slot the next event lands in
    size_t log_size_ = 0;
    uint64_t violations_ = 0;
    std::string last_violation_;
};

} // namespace cleanq
