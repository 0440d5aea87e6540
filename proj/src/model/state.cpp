#include "cleanq/model/state.hpp"

#include <sstream>

namespace cleanq::model {

namespace {

const IntervalSet kEmptySet;

std::string describe(const BufKey& b) {
    std::ostringstream os;
    os << "(rid " << b.rid << ", off " << b.off << ", len " << b.len << ")";
    return os.str();
}

/*
 * Shared invariant core: per region, the two owned pools and the byte
 * ranges of all in-flight buffers must partition [0, length).
 */
template <typename TransferRange>
std::optional<std::string> pools_invariant(const OwnedPools& pools, const TransferRange& q_ab,
                                           const TransferRange& q_ba) {
    for (const auto& [rid, entry] : pools.regions()) {
        IntervalSet seen;
        for (Side s : {Side::A, Side::B}) {
            for (const auto& [lo, hi] : pools.owned(s, rid).intervals()) {
                if (hi > entry.length)
                    return "owned bytes outside region " + std::to_string(rid);
                if (seen.intersects(lo, hi))
                    return "owned pools overlap in region " + std::to_string(rid);
                seen.add(lo, hi);
            }
        }
        for (const auto* q : {&q_ab, &q_ba}) {
            for (const BufKey& b : *q) {
                if (b.rid != rid) continue;
                if (b.off > entry.length || b.len > entry.length - b.off)
                    return "in-flight buffer outside region: " + describe(b);
                if (seen.intersects(b.off, b.off + b.len))
                    return "in-flight buffer overlaps owned or in-flight bytes: " + describe(b);
                seen.add(b.off, b.off + b.len);
            }
        }
        if (seen.total_bytes() != entry.length)
            return "conservation broken in region " + std::to_string(rid) + ": " +
                   std::to_string(seen.total_bytes()) + " of " + std::to_string(entry.length) +
                   " bytes accounted for";
    }
    /* No in-flight buffer may name an unregistered region. */
    for (const auto* q : {&q_ab, &q_ba})
        for (const BufKey& b : *q)
            if (!pools.region_known(b.rid))
                return "in-flight buffer in unregistered region: " + describe(b);
    return std::nullopt;
}

} // namespace

ErrorCode OwnedPools::reg(Side s, uint32_t rid, uint64_t len) {
    if (len == 0) return ErrorCode::INVALID_REGION;
    if (regions_.count(rid)) return ErrorCode::REGION_OVERLAP;
    regions_[rid] = RegionEntry{len, s};
    owned_[static_cast<int>(s)][rid].add(0, len);
    return ErrorCode::OK;
}

ErrorCode OwnedPools::dereg(Side s, uint32_t rid) {
    auto it = regions_.find(rid);
    if (it == regions_.end()) return ErrorCode::INVALID_REGION;
    if (!owned(s, rid).covers(0, it->second.length)) return ErrorCode::REGION_BUSY;
    regions_.erase(it);
    owned_[0].erase(rid);
    owned_[1].erase(rid);
    return ErrorCode::OK;
}

ErrorCode OwnedPools::take(Side s, const BufKey& b) {
    auto it = regions_.find(b.rid);
    if (it == regions_.end()) return ErrorCode::INVALID_REGION;
    if (b.len == 0 || b.off > it->second.length || b.len > it->second.length - b.off)
        return ErrorCode::INVALID_BUFFER;
    IntervalSet& mine = owned_[static_cast<int>(s)][b.rid];
    if (!mine.covers(b.off, b.off + b.len)) return ErrorCode::OWNERSHIP_VIOLATION;
    mine.remove(b.off, b.off + b.len);
    return ErrorCode::OK;
}

void OwnedPools::give(Side s, const BufKey& b) {
    owned_[static_cast<int>(s)][b.rid].add(b.off, b.off + b.len);
}

const IntervalSet& OwnedPools::owned(Side s, uint32_t rid) const {
    auto it = owned_[static_cast<int>(s)].find(rid);
    return it == owned_[static_cast<int>(s)].end() ? kEmptySet : it->second;
}

ErrorCode SetState::enq(Side s, const BufKey& b) {
    const ErrorCode e = pools_.take(s, b);
    if (!ok(e)) return e;
    q_[static_cast<int>(s)].insert(b);
    return ErrorCode::OK;
}

ErrorCode SetState::deq_any(Side s, BufKey& out) {
    std::set<BufKey>& in = q_[static_cast<int>(peer_of(s))];
    if (in.empty()) return ErrorCode::QUEUE_EMPTY;
    out = *in.begin();
    in.erase(in.begin());
    pools_.give(s, out);
    return ErrorCode::OK;
}

ErrorCode SetState::deq_expect(Side s, const BufKey& b) {
    std::set<BufKey>& in = q_[static_cast<int>(peer_of(s))];
    auto it = in.find(b);
    if (it == in.end())
        return in.empty() ? ErrorCode::QUEUE_EMPTY : ErrorCode::OWNERSHIP_VIOLATION;
    in.erase(it);
    pools_.give(s, b);
    return ErrorCode::OK;
}

std::optional<std::string> SetState::invariant_violation() const {
    return pools_invariant(pools_, q_[0], q_[1]);
}

ErrorCode ListState::enq(Side s, const BufKey& b) {
    const ErrorCode e = pools_.take(s, b);
    if (!ok(e)) return e;
    l_[static_cast<int>(s)].push_back(b);
    return ErrorCode::OK;
}

ErrorCode ListState::deq(Side s, BufKey& out) {
    std::deque<BufKey>& in = l_[static_cast<int>(peer_of(s))];
    if (in.empty()) return ErrorCode::QUEUE_EMPTY;
    out = in.front();
    in.pop_front();
    pools_.give(s, out);
    return ErrorCode::OK;
}

ErrorCode ListState::deq_expect(Side s, const BufKey& b) {
    std::deque<BufKey>& in = l_[static_cast<int>(peer_of(s))];
    if (in.empty()) return ErrorCode::QUEUE_EMPTY;
    if (in.front() != b) return ErrorCode::OWNERSHIP_VIOLATION; // order broken
    in.pop_front();
    pools_.give(s, b);
    return ErrorCode::OK;
}

std::optional<std::string> ListState::invariant_violation() const {
    return pools_invariant(pools_, l_[0], l_[1]);
}

ErrorCode RingModel::enq(Side s, const BufKey& b) {
    if (lists_.l_[static_cast<int>(s)].size() >= capacity_) return ErrorCode::QUEUE_FULL;
    return lists_.enq(s, b);
}

std::optional<std::string> RingModel::invariant_violation() const {
    if (lists_.l_[0].size() > capacity_ || lists_.l_[1].size() > capacity_)
        return "ring holds more than its capacity";
    return lists_.invariant_violation();
}

ErrorCode HwRingModel::enq_a(const BufKey& b) {
    if (!skip_full_check_ && tail_ == recl_ + capacity_) return ErrorCode::QUEUE_FULL;
    slots_[tail_ % capacity_] = b;
    ++tail_;
    return ErrorCode::OK;
}

ErrorCode HwRingModel::deq_b(BufKey& out) {
    if (head_ == tail_) return ErrorCode::QUEUE_EMPTY;
    out = slots_[head_ % capacity_];
    ++head_;
    return ErrorCode::OK;
}

ErrorCode HwRingModel::enq_b(const BufKey& b) {
    if (done_ == head_) return ErrorCode::OWNERSHIP_VIOLATION; // nothing outstanding
    if (slots_[done_ % capacity_] != b) return ErrorCode::OWNERSHIP_VIOLATION; // out of order
    ++done_;
    return ErrorCode::OK;
}

ErrorCode HwRingModel::deq_a(BufKey& out) {
    if (recl_ == done_) return ErrorCode::QUEUE_EMPTY;
    out = slots_[recl_ % capacity_];
    ++recl_;
    return ErrorCode::OK;
}

} // namespace cleanq::model
