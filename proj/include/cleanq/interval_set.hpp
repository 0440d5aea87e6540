#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace cleanq {

/*
 * Set of byte positions kept as sorted, coalesced half-open intervals.
 * Backs the byte-granularity ownership bookkeeping in the model and in the
 * debug module, so add/remove/covers stay cheap for the handful of
 * intervals a live region typically fragments into.
 *
 * Callers that need overlap to be an error check intersects() before add();
 * add() itself unions, remove() subtracts whatever part is present.
 */
class IntervalSet {
public:
    using Interval = std::pair<uint64_t, uint64_t>; // [first, second)

    bool empty() const { return ivs_.empty(); }
    size_t interval_count() const { return ivs_.size(); }
    uint64_t total_bytes() const;

    /* True iff every byte of [lo, hi) is present. Empty ranges are covered. */
    bool covers(uint64_t lo, uint64_t hi) const;
    /* True iff any byte of [lo, hi) is present. */
    bool intersects(uint64_t lo, uint64_t hi) const;

    void add(uint64_t lo, uint64_t hi);
    void remove(uint64_t lo, uint64_t hi);
    void clear() { ivs_.clear(); }

    const std::vector<Interval>& intervals() const { return ivs_; }

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> ivs_;
};

} // namespace cleanq
