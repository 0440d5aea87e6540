#include "cleanq/queue.hpp"

namespace cleanq {

ErrorCode Endpoint::register_region(void* base, uint64_t length, uint32_t& rid_out) {
    uint32_t rid = 0;
    ErrorCode e = regions_->allocate(side_, static_cast<std::byte*>(base), length, rid);
    if (!ok(e)) return e;
    e = top_.register_region(RegionInfo{rid, static_cast<std::byte*>(base), length});
    if (!ok(e)) {
        regions_->drop(rid);
        return e;
    }
    rid_out = rid;
    return ErrorCode::OK;
}

ErrorCode Endpoint::deregister_region(uint32_t rid) {
    RegionInfo info;
    if (!regions_->lookup(rid, info)) return ErrorCode::INVALID_REGION;
    if (regions_->held_bytes(side_, rid) != static_cast<int64_t>(info.length))
        return ErrorCode::REGION_BUSY;
    const ErrorCode e = top_.deregister_region(rid);
    if (!ok(e)) return e;
    return regions_->remove(side_, rid);
}

ErrorCode Endpoint::enqueue(const BufferToken& b) {
    RegionInfo info;
    if (!regions_->lookup(b.rid, info)) return ErrorCode::INVALID_REGION;
    if (b.length == 0 || b.offset > info.length || b.length > info.length - b.offset)
        return ErrorCode::INVALID_BUFFER;
    if (!valid_window_ok(b)) return ErrorCode::INVALID_BUFFER;
    const ErrorCode e = top_.enqueue(b);
    if (ok(e)) regions_->on_transfer_out(side_, b.rid, b.length);
    return e;
}

ErrorCode Endpoint::dequeue(BufferToken& out) {
    const ErrorCode e = top_.dequeue(out);
    if (!ok(e)) return e;
    RegionInfo info;
    if (!regions_->lookup(out.rid, info) || out.offset > info.length ||
        out.length > info.length - out.offset)
        return ErrorCode::BACKEND_ERROR; // backend produced a token outside any region
    regions_->on_transfer_in(side_, out.rid, out.length);
    return ErrorCode::OK;
}

ErrorCode Endpoint::notify() { return top_.notify(); }

} // namespace cleanq
