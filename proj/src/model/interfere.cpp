#include "cleanq/model/interfere.hpp"

#include <algorithm>
#include <map>

#include "cleanq/interval_set.hpp"
#include "cleanq/model/state.hpp"

namespace cleanq::model {

namespace {

struct DirectionLog {
    std::vector<BufKey> enq_keys;
    std::vector<uint64_t> enq_times;
    std::vector<BufKey> deq_keys;
    std::vector<uint64_t> deq_times;
};

std::string describe(const BufKey& b) {
    return "(rid " + std::to_string(b.rid) + ", off " + std::to_string(b.off) + ", len " +
           std::to_string(b.len) + ")";
}

/*
 * Replay one actor's trace against its own local ownership view. Only the
 * actor's own operations change what it holds, so this is exact no matter
 * how the two threads interleaved.
 */
void check_actor_local(const Trace& trace, Side who, InterferenceReport& rep) {
    std::map<uint32_t, uint64_t> region_len;
    std::map<uint32_t, IntervalSet> held;
    const std::string name = side_name(who);

    for (const TraceEvent& e : trace) {
        if (e.actor != who) {
            rep.violations.push_back("trace for actor " + name + " contains an event by " +
                                     side_name(e.actor));
            continue;
        }
        if (e.result != ErrorCode::OK) continue;
        switch (e.op) {
        case OpKind::Register:
            region_len[e.rid] = e.len;
            held[e.rid].add(0, e.len);
            break;
        case OpKind::Deregister:
            if (auto it = region_len.find(e.rid); it != region_len.end()) {
                if (!held[e.rid].covers(0, it->second))
                    rep.violations.push_back(name + " deregistered region " +
                                             std::to_string(e.rid) +
                                             " without holding all of it");
                region_len.erase(it);
                held.erase(e.rid);
            }
            break;
        case OpKind::Enqueue: {
            IntervalSet& h = held[e.rid];
            if (!h.covers(e.off, e.off + e.len))
                rep.violations.push_back(name + " enqueued bytes it did not hold: " +
                                         describe(BufKey{e.rid, e.off, e.len}));
            h.remove(e.off, e.off + e.len);
            break;
        }
        case OpKind::Dequeue: {
            IntervalSet& h = held[e.rid];
            if (h.intersects(e.off, e.off + e.len))
                rep.violations.push_back(name + " dequeued bytes it already held: " +
                                         describe(BufKey{e.rid, e.off, e.len}));
            h.add(e.off, e.off + e.len);
            break;
        }
        }
    }
}

void collect_direction(const Trace& trace, OpKind kind, std::vector<BufKey>& keys,
                       std::vector<uint64_t>& times) {
    for (const TraceEvent& e : trace) {
        if (e.op != kind || e.result != ErrorCode::OK) continue;
        keys.push_back(BufKey{e.rid, e.off, e.len});
        times.push_back(e.t);
    }
}

void check_direction(const DirectionLog& d, const char* label, InterferenceReport& rep) {
    if (d.deq_keys.size() > d.enq_keys.size()) {
        rep.violations.push_back(std::string(label) + ": more dequeues (" +
                                 std::to_string(d.deq_keys.size()) + ") than enqueues (" +
                                 std::to_string(d.enq_keys.size()) + ")");
        return;
    }
    for (size_t i = 0; i < d.deq_keys.size(); ++i) {
        if (d.deq_keys[i] != d.enq_keys[i]) {
            rep.violations.push_back(std::string(label) + ": dequeue " + std::to_string(i) +
                                     " returned " + describe(d.deq_keys[i]) + " but enqueue " +
                                     std::to_string(i) + " sent " + describe(d.enq_keys[i]));
            return; // everything after the first reorder would re-report it
        }
        if (d.deq_times[i] < d.enq_times[i]) ++rep.timestamp_inversions;
    }
}

} // namespace

InterferenceReport check_interference(const Trace& trace_a, const Trace& trace_b,
                                      const InterferenceOptions& opt) {
    InterferenceReport rep;
    rep.events_checked = trace_a.size() + trace_b.size();

    check_actor_local(trace_a, Side::A, rep);
    check_actor_local(trace_b, Side::B, rep);

    DirectionLog ab, ba;
    collect_direction(trace_a, OpKind::Enqueue, ab.enq_keys, ab.enq_times);
    collect_direction(trace_b, OpKind::Dequeue, ab.deq_keys, ab.deq_times);
    collect_direction(trace_b, OpKind::Enqueue, ba.enq_keys, ba.enq_times);
    collect_direction(trace_a, OpKind::Dequeue, ba.deq_keys, ba.deq_times);

    check_direction(ab, "A->B", rep);
    check_direction(ba, "B->A", rep);

    rep.in_flight_ab = ab.enq_keys.size() - std::min(ab.enq_keys.size(), ab.deq_keys.size());
    rep.in_flight_ba = ba.enq_keys.size() - std::min(ba.enq_keys.size(), ba.deq_keys.size());
    if (opt.expect_drained && (rep.in_flight_ab != 0 || rep.in_flight_ba != 0))
        rep.violations.push_back("run was declared drained but " +
                                 std::to_string(rep.in_flight_ab) + " (A->B) and " +
                                 std::to_string(rep.in_flight_ba) +
                                 " (B->A) buffers are unaccounted for");

    rep.ok = rep.violations.empty();
    return rep;
}

} // namespace cleanq::model
