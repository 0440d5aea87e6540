#include "cleanq/region_table.hpp"

#include <bit>

namespace cleanq {

RegionTable::RegionTable(uint32_t slots) {
    if (slots < 2 || !std::has_single_bit(slots)) slots = kDefaultSlots;
    mask_ = slots - 1;
    slots_ = std::vector<Slot>(slots);
}

RegionTable::~RegionTable() = default;

RegionTable::Slot* RegionTable::find_slot(uint32_t rid) {
    for (uint32_t i = 0; i <= mask_; ++i) {
        Slot& s = slots_[(rid + i) & mask_];
        if (!s.used) return nullptr; // never-stamped slot ends the probe chain
        if (s.live && s.rid == rid) return &s;
    }
    return nullptr;
}

const RegionTable::Slot* RegionTable::find_slot(uint32_t rid) const {
    return const_cast<RegionTable*>(this)->find_slot(rid);
}

ErrorCode RegionTable::allocate(Side registrar, std::byte* base, uint64_t length, uint32_t& rid_out) {
    if (base == nullptr || length == 0) return ErrorCode::INVALID_REGION;
    std::lock_guard<std::mutex> lock(mu_);

    const std::byte* lo = base;
    const std::byte* hi = base + length;
    for (const Slot& s : slots_) {
        if (!s.live) continue;
        if (lo < s.base + s.length && s.base < hi) return ErrorCode::REGION_OVERLAP;
    }

    const uint32_t rid = next_rid_;
    Slot* dst = nullptr;
    for (uint32_t i = 0; i <= mask_; ++i) {
        Slot& s = slots_[(rid + i) & mask_];
        if (!s.live) { dst = &s; break; }
    }
    if (dst == nullptr) return ErrorCode::BACKEND_ERROR; // table exhausted

    dst->seq.fetch_add(1, std::memory_order_release);
    dst->rid = rid;
    dst->base = base;
    dst->length = length;
    dst->used = true;
    dst->live = true;
    dst->held[0].store(0, std::memory_order_relaxed);
    dst->held[1].store(0, std::memory_order_relaxed);
    dst->held[static_cast<int>(registrar)].store(static_cast<int64_t>(length), std::memory_order_relaxed);
    dst->seq.fetch_add(1, std::memory_order_release);

    next_rid_ = rid + 1;
    rid_out = rid;
    return ErrorCode::OK;
}

void RegionTable::drop(uint32_t rid) {
    std::lock_guard<std::mutex> lock(mu_);
    if (Slot* s = find_slot(rid)) {
        s->seq.fetch_add(1, std::memory_order_release);
        s->live = false;
        s->seq.fetch_add(1, std::memory_order_release);
    }
}

ErrorCode RegionTable::remove(Side caller, uint32_t rid) {
    std::lock_guard<std::mutex> lock(mu_);
    Slot* s = find_slot(rid);
    if (s == nullptr) return ErrorCode::INVALID_REGION;
    if (s->held[static_cast<int>(caller)].load(std::memory_order_relaxed) !=
        static_cast<int64_t>(s->length))
        return ErrorCode::REGION_BUSY;
    s->seq.fetch_add(1, std::memory_order_release);
    s->live = false;
    s->seq.fetch_add(1, std::memory_order_release);
    return ErrorCode::OK;
}

bool RegionTable::lookup(uint32_t rid, RegionInfo& out) const {
    for (uint32_t i = 0; i <= mask_; ++i) {
        const Slot& s = slots_[(rid + i) & mask_];
        for (;;) {
            const uint64_t s1 = s.seq.load(std::memory_order_acquire);
            if (s1 & 1) continue; // mid-mutation, reread
            const bool used = s.used;
            const bool live = s.live;
            const uint64_t srid = s.rid;
            std::byte* base = s.base;
            const uint64_t length = s.length;
            std::atomic_thread_fence(std::memory_order_acquire);
            const uint64_t s2 = s.seq.load(std::memory_order_relaxed);
            if (s1 != s2) continue;
            if (!used) return false;
            if (live && srid == rid) {
                out = RegionInfo{rid, base, length};
                return true;
            }
            break; // stable non-match, probe onward
        }
    }
    return false;
}

/*
 * Lock-free probe for the counter updates on the transfer fast path. A slot
 * observed live for rid can in principle be deregistered and restamped
 * before the counter update lands, but deregistering requires full
 * ownership, which rules out in-flight transfers on that region in any
 * contract-respecting run; allocate() restamps both counters anyway.
 */
RegionTable::Slot* RegionTable::probe_live(uint32_t rid) {
    for (uint32_t i = 0; i <= mask_; ++i) {
        Slot& s = slots_[(rid + i) & mask_];
        for (;;) {
            const uint64_t s1 = s.seq.load(std::memory_order_acquire);
            if (s1 & 1) continue;
            const bool used = s.used;
            const bool live = s.live;
            const uint64_t srid = s.rid;
            std::atomic_thread_fence(std::memory_order_acquire);
            const uint64_t s2 = s.seq.load(std::memory_order_relaxed);
            if (s1 != s2) continue;
            if (!used) return nullptr;
            if (live && srid == rid) return &s;
            break;
        }
    }
    return nullptr;
}

void RegionTable::on_transfer_out(Side s, uint32_t rid, uint64_t bytes) {
    if (Slot* slot = probe_live(rid))
        slot->held[static_cast<int>(s)].fetch_sub(static_cast<int64_t>(bytes), std::memory_order_relaxed);
}

void RegionTable::on_transfer_in(Side s, uint32_t rid, uint64_t bytes) {
    if (Slot* slot = probe_live(rid))
        slot->held[static_cast<int>(s)].fetch_add(static_cast<int64_t>(bytes), std::memory_order_relaxed);
}

int64_t RegionTable::held_bytes(Side s, uint32_t rid) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (const Slot* slot = find_slot(rid))
        return slot->held[static_cast<int>(s)].load(std::memory_order_relaxed);
    return 0;
}

uint32_t RegionTable::live_count() const {
    std::lock_guard<std::mutex> lock(mu_);
    uint32_t n = 0;
    for (const Slot& s : slots_)
        if (s.live) ++n;
    return n;
}

} // namespace cleanq
