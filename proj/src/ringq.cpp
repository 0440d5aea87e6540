#include "cleanq/ringq.hpp"

#include <cstring>
#include <new>

#include <fcntl.h>
#include <sys/mman.h>
#include <unistd.h>

namespace cleanq {

namespace {

uint64_t slot_check_value(const BufferToken& b) {
    /* Order-sensitive mix so any torn combination of fields misses. */
    uint64_t h = 0x9E3779B97F4A7C15ull;
    for (uint64_t v : {static_cast<uint64_t>(b.rid), b.offset, b.length, b.valid_data,
                       b.valid_length, b.flags}) {
        h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        h *= 0xFF51AFD7ED558CCDull;
    }
    return h;
}

size_t segment_size_for(uint32_t capacity) {
    return 64 + 2ull * capacity * sizeof(RingSlot);
}

void init_segment(void* seg, uint32_t capacity) {
    auto* hdr = new (seg) SegmentHeader{};
    std::memcpy(hdr->magic, kSegmentMagic, 4);
    hdr->version = kSegmentVersion;
    hdr->capacity = capacity;
    hdr->reserved = 0;
    hdr->ring_off[0] = 64;
    hdr->ring_off[1] = 64 + static_cast<uint64_t>(capacity) * sizeof(RingSlot);
    auto* slots = static_cast<uint8_t*>(seg) + 64;
    for (uint64_t i = 0; i < 2ull * capacity; ++i)
        new (slots + i * sizeof(RingSlot)) RingSlot{};
}

bool capacity_ok(uint32_t capacity) {
    return capacity >= 2 && std::has_single_bit(capacity);
}

void set_err(ErrorCode* err, ErrorCode v) {
    if (err) *err = v;
}

} // namespace

ErrorCode RingEndpoint::enqueue(const BufferToken& b) {
    RingSlot& s = tx_[tail_ & mask_];
    const auto acq = faults_.relaxed_order ? std::memory_order_relaxed : std::memory_order_acquire;
    const auto rel = faults_.relaxed_order ? std::memory_order_relaxed : std::memory_order_release;
    if (!faults_.skip_full_check && s.state.load(acq) != kSlotEmpty) return ErrorCode::QUEUE_FULL;
    s.rid = b.rid;
    s.pad0 = 0;
    s.offset = b.offset;
    s.length = b.length;
    s.valid_data = b.valid_data;
    s.valid_length = b.valid_length;
    s.flags = b.flags;
    s.check = checksum_slots_ ? slot_check_value(b) : 0;
    s.state.store(kSlotFull, rel);
    ++tail_;
    return ErrorCode::OK;
}

ErrorCode RingEndpoint::dequeue(BufferToken& out) {
    RingSlot& s = rx_[head_ & mask_];
    const auto acq = faults_.relaxed_order ? std::memory_order_relaxed : std::memory_order_acquire;
    const auto rel = faults_.relaxed_order ? std::memory_order_relaxed : std::memory_order_release;
    if (s.state.load(acq) != kSlotFull) return ErrorCode::QUEUE_EMPTY;
    out.rid = s.rid;
    out.offset = s.offset;
    out.length = s.length;
    out.valid_data = s.valid_data;
    out.valid_length = s.valid_length;
    out.flags = s.flags;
    if (checksum_slots_ && s.check != slot_check_value(out))
        check_mismatches_.fetch_add(1, std::memory_order_relaxed);
    s.state.store(kSlotEmpty, rel);
    ++head_;
    return ErrorCode::OK;
}

ErrorCode RingEndpoint::notify() {
    if (peer_hook_ && *peer_hook_) (*peer_hook_)();
    return ErrorCode::OK;
}

void RingPair::wire_endpoints() {
    auto* hdr = static_cast<SegmentHeader*>(seg_);
    auto* base = static_cast<uint8_t*>(seg_);
    auto* ring_ab = reinterpret_cast<RingSlot*>(base + hdr->ring_off[0]);
    auto* ring_ba = reinterpret_cast<RingSlot*>(base + hdr->ring_off[1]);
    capacity_ = hdr->capacity;

    eps_[0].tx_ = ring_ab;
    eps_[0].rx_ = ring_ba;
    eps_[1].tx_ = ring_ba;
    eps_[1].rx_ = ring_ab;
    for (int i = 0; i < 2; ++i) {
        eps_[i].mask_ = capacity_ - 1;
        eps_[i].peer_hook_ = &hooks_[1 - i];
    }
}

std::unique_ptr<RingPair> RingPair::create(uint32_t capacity, ErrorCode* err) {
    set_err(err, ErrorCode::OK);
    if (!capacity_ok(capacity)) {
        set_err(err, ErrorCode::INVALID_BUFFER);
        return nullptr;
    }
    const size_t size = segment_size_for(capacity);
    void* seg = ::operator new(size, std::align_val_t(64), std::nothrow);
    if (seg == nullptr) {
        set_err(err, ErrorCode::BACKEND_ERROR);
        return nullptr;
    }
    init_segment(seg, capacity);

    auto p = std::unique_ptr<RingPair>(new RingPair());
    p->seg_ = seg;
    p->seg_size_ = size;
    p->heap_ = true;
    p->wire_endpoints();
    return p;
}

std::unique_ptr<RingPair> RingPair::create_shm(const std::string& name, uint32_t capacity,
                                               ErrorCode* err) {
    set_err(err, ErrorCode::OK);
    if (!capacity_ok(capacity)) {
        set_err(err, ErrorCode::INVALID_BUFFER);
        return nullptr;
    }
    const size_t size = segment_size_for(capacity);
    const int fd = shm_open(name.c_str(), O_CREAT | O_EXCL | O_RDWR, 0600);
    if (fd < 0) {
        set_err(err, ErrorCode::BACKEND_ERROR);
        return nullptr;
    }
    if (ftruncate(fd, static_cast<off_t>(size)) != 0) {
        close(fd);
        shm_unlink(name.c_str());
        set_err(err, ErrorCode::BACKEND_ERROR);
        return nullptr;
    }
    void* seg = mmap(nullptr, size, PROT_READ | PROT_WRITE, MAP_SHARED, fd, 0);
    close(fd);
    if (seg == MAP_FAILED) {
        shm_unlink(name.c_str());
        set_err(err, ErrorCode::BACKEND_ERROR);
        return nullptr;
    }
    init_segment(seg, capacity);

    auto p = std::unique_ptr<RingPair>(new RingPair());
    p->seg_ = seg;
    p->seg_size_ = size;
    p->shm_owner_ = true;
    p->shm_name_ = name;
    p->wire_endpoints();
    return p;
}

std::unique_ptr<RingPair> RingPair::attach_shm(const std::string& name, ErrorCode* err) {
    set_err(err, ErrorCode::OK);
    const int fd = shm_open(name.c_str(), O_RDWR, 0600);
    if (fd < 0) {
        set_err(err, ErrorCode::BACKEND_ERROR);
        return nullptr;
    }
    SegmentHeader hdr{};
    if (pread(fd, &hdr, sizeof hdr, 0) != static_cast<ssize_t>(sizeof hdr) ||
        std::memcmp(hdr.magic, kSegmentMagic, 4) != 0 || hdr.version != kSegmentVersion ||
        !capacity_ok(hdr.capacity)) {
        close(fd);
        set_err(err, ErrorCode::BACKEND_ERROR);
        return nullptr;
    }
    const size_t size = segment_size_for(hdr.capacity);
    void* seg = mmap(nullptr, size, PROT_READ | PROT_WRITE, MAP_SHARED, fd, 0);
    close(fd);
    if (seg == MAP_FAILED) {
        set_err(err, ErrorCode::BACKEND_ERROR);
        return nullptr;
    }

    auto p = std::unique_ptr<RingPair>(new RingPair());
    p->seg_ = seg;
    p->seg_size_ = size;
    p->wire_endpoints();
    return p;
}

RingPair::~RingPair() {
    if (seg_ == nullptr) return;
    if (heap_) {
        ::operator delete(seg_, std::align_val_t(64));
    } else {
        munmap(seg_, seg_size_);
        if (shm_owner_) shm_unlink(shm_name_.c_str());
    }
}

void RingPair::set_notify_hook(Side for_side, std::function<void()> fn) {
    hooks_[static_cast<int>(for_side)] = std::move(fn);
}

void RingPair::enable_slot_checksums(bool on) {
    eps_[0].checksum_slots_ = on;
    eps_[1].checksum_slots_ = on;
}

void RingPair::set_faults(const RingFaults& f) {
    eps_[0].set_faults(f);
    eps_[1].set_faults(f);
}

} // namespace cleanq
