#include "cleanq/debugq.hpp"

#include <ostream>
#include <utility>

#include "cleanq/tick.hpp"

namespace cleanq {

DebugModule::DebugModule(QueueModule& lower, DebugOptions opts)
    : PassthroughModule(lower), opts_(std::move(opts)) {
    if (opts_.log_capacity == 0) opts_.log_capacity = 1;
    ring_.resize(opts_.log_capacity);
}

DebugModule::Entry* DebugModule::find(uint32_t rid) {
    for (Entry& e : entries_)
        if (e.rid == rid) return &e;
    return nullptr;
}

DebugModule::Entry& DebugModule::find_or_create(uint32_t rid) {
    if (Entry* e = find(rid)) return *e;
    Entry e;
    e.rid = rid;
    if (opts_.table) {
        RegionInfo info;
        if (opts_.table->lookup(rid, info)) {
            e.bound = info.length;
            e.bound_known = true;
        }
    }
    entries_.push_back(std::move(e));
    return entries_.back();
}

void DebugModule::flag(std::string why) {
    ++violations_;
    last_violation_ = std::move(why);
}

void DebugModule::log(OpKind op, uint32_t rid, uint64_t off, uint64_t len, ErrorCode result) {
    TraceEvent& ev = ring_[log_next_];
    ev.t = tick_now();
    ev.actor = opts_.side;
    ev.op = op;
    ev.rid = rid;
    ev.off = off;
    ev.len = len;
    ev.result = result;
    if (++log_next_ == ring_.size()) log_next_ = 0;
    if (log_size_ < ring_.size()) ++log_size_;
}

ErrorCode DebugModule::enqueue(const BufferToken& b) {
    Entry* e = find(b.rid);
    if (!e) {
        flag("enqueue names a region this side has never seen: rid " + std::to_string(b.rid));
        log(OpKind::Enqueue, b.rid, b.offset, b.length, ErrorCode::OWNERSHIP_VIOLATION);
        return ErrorCode::OWNERSHIP_VIOLATION;
    }
    if (!e->held.covers(b.offset, b.offset + b.length)) {
        flag("enqueue of bytes this side does not hold: rid " + std::to_string(b.rid) +
             " [" + std::to_string(b.offset) + ", " + std::to_string(b.offset + b.length) + ")");
        log(OpKind::Enqueue, b.rid, b.offset, b.length, ErrorCode::OWNERSHIP_VIOLATION);
        return ErrorCode::OWNERSHIP_VIOLATION;
    }
    const ErrorCode r = lower().enqueue(b);
    if (ok(r)) e->held.remove(b.offset, b.offset + b.length);
    log(OpKind::Enqueue, b.rid, b.offset, b.length, r);
    return r;
}

ErrorCode DebugModule::dequeue(BufferToken& out) {
    const ErrorCode r = lower().dequeue(out);
    if (!ok(r)) {
        log(OpKind::Dequeue, 0, 0, 0, r);
        return r;
    }
    Entry& e = find_or_create(out.rid);
    if (e.bound_known &&
        (out.offset > e.bound || out.length > e.bound - out.offset)) {
        flag("dequeue returned a buffer outside its region: rid " + std::to_string(out.rid) +
             " [" + std::to_string(out.offset) + ", " +
             std::to_string(out.offset + out.length) + ") in a region of " +
             std::to_string(e.bound) + " bytes");
        log(OpKind::Dequeue, out.rid, out.offset, out.length, ErrorCode::OWNERSHIP_VIOLATION);
        return ErrorCode::OWNERSHIP_VIOLATION;
    }
    if (e.held.intersects(out.offset, out.offset + out.length)) {
        flag("dequeue returned bytes this side already holds: rid " + std::to_string(out.rid) +
             " [" + std::to_string(out.offset) + ", " +
             std::to_string(out.offset + out.length) + ")");
        log(OpKind::Dequeue, out.rid, out.offset, out.length, ErrorCode::OWNERSHIP_VIOLATION);
        return ErrorCode::OWNERSHIP_VIOLATION;
    }
    e.held.add(out.offset, out.offset + out.length);
    log(OpKind::Dequeue, out.rid, out.offset, out.length, r);
    return r;
}

ErrorCode DebugModule::register_region(const RegionInfo& r) {
    if (find(r.rid)) {
        flag("register reuses a live rid: " + std::to_string(r.rid));
        log(OpKind::Register, r.rid, 0, r.length, ErrorCode::REGION_OVERLAP);
        return ErrorCode::REGION_OVERLAP;
    }
    const ErrorCode rc = lower().register_region(r);
    if (ok(rc)) {
        Entry e;
        e.rid = r.rid;
        e.bound = r.length;
        e.bound_known = true;
        e.held.add(0, r.length);
        entries_.push_back(std::move(e));
    }
    log(OpKind::Register, r.rid, 0, r.length, rc);
    return rc;
}

ErrorCode DebugModule::deregister_region(uint32_t rid) {
    if (Entry* e = find(rid); e && e->bound_known && !e->held.covers(0, e->bound)) {
        flag("deregister of region " + std::to_string(rid) +
             " while some of its bytes are still in flight");
        log(OpKind::Deregister, rid, 0, 0, ErrorCode::REGION_BUSY);
        return ErrorCode::REGION_BUSY;
    }
    const ErrorCode rc = lower().deregister_region(rid);
    if (ok(rc)) {
        for (size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].rid != rid) continue;
            entries_[i] = std::move(entries_.back());
            entries_.pop_back();
            break;
        }
    }
    log(OpKind::Deregister, rid, 0, 0, rc);
    return rc;
}

const IntervalSet* DebugModule::held(uint32_t rid) const {
    for (const Entry& e : entries_)
        if (e.rid == rid) return &e.held;
    return nullptr;
}

void DebugModule::clear_log() {
    log_next_ = 0;
    log_size_ = 0;
}

void DebugModule::dump_log(std::ostream& os) const {
    const TickCalibration& cal = tick_calibration();
    const size_t cap = ring_.size();
    const size_t start = (log_next_ + cap - log_size_) % cap;
    for (size_t i = 0; i < log_size_; ++i) {
        TraceEvent ev = ring_[(start + i) % cap];
        ev.t = cal.to_ns(ev.t);
        os << to_json_line(ev) << '\n';
    }
}

} // namespace cleanq
