#include "cleanq/model/refine.hpp"

#include <algorithm>

namespace cleanq::model {

namespace {

std::string mismatch(const TraceEvent& e, ErrorCode model_result) {
    return std::string(op_name(e.op)) + " recorded " + result_string(e.result) +
           " but the model computes " + result_string(model_result);
}

/*
 * Replay one event against one state. Results must agree with the trace,
 * with two deliberate relaxations:
 *
 *  - a "full" result is a legal no-op at the unbounded levels (the bounded
 *    ring refines the unbounded spec by rejecting when out of space);
 *  - failed registers are no-ops everywhere, because their failure modes
 *    (address overlap, table pressure) live below the model's abstraction.
 */
template <typename State>
std::optional<std::string> replay_event(State& st, const TraceEvent& e, bool bounded) {
    const BufKey key{e.rid, e.off, e.len};
    switch (e.op) {
    case OpKind::Register: {
        if (!ok(e.result)) return std::nullopt;
        const ErrorCode r = st.reg(e.actor, e.rid, e.len);
        if (r != ErrorCode::OK) return mismatch(e, r);
        return std::nullopt;
    }
    case OpKind::Deregister: {
        const ErrorCode r = st.dereg(e.actor, e.rid);
        if (r != e.result) return mismatch(e, r);
        return std::nullopt;
    }
    case OpKind::Enqueue: {
        if (!bounded && e.result == ErrorCode::QUEUE_FULL) return std::nullopt;
        const ErrorCode r = st.enq(e.actor, key);
        if (r != e.result) return mismatch(e, r);
        return std::nullopt;
    }
    case OpKind::Dequeue: {
        if (e.result == ErrorCode::OK) {
            const ErrorCode r = st.deq_expect(e.actor, key);
            if (r != ErrorCode::OK)
                return "deq recorded ok for (rid " + std::to_string(e.rid) + ", off " +
                       std::to_string(e.off) + ", len " + std::to_string(e.len) +
                       ") but the model reports " + result_string(r);
            return std::nullopt;
        }
        if (e.result == ErrorCode::QUEUE_EMPTY) {
            if (!st.incoming_empty(e.actor))
                return "deq recorded empty but the model queue holds buffers";
            return std::nullopt;
        }
        return "deq recorded unexpected result " + result_string(e.result);
    }
    }
    return "unknown op";
}

/* Adapters giving the three levels one replay surface. */
struct SetAdapter {
    SetState st;
    ErrorCode reg(Side s, uint32_t rid, uint64_t len) { return st.reg(s, rid, len); }
    ErrorCode dereg(Side s, uint32_t rid) { return st.dereg(s, rid); }
    ErrorCode enq(Side s, const BufKey& b) { return st.enq(s, b); }
    ErrorCode deq_expect(Side s, const BufKey& b) { return st.deq_expect(s, b); }
    bool incoming_empty(Side s) const {
        return (s == Side::A ? st.q_ba() : st.q_ab()).empty();
    }
    std::optional<std::string> invariant_violation() const { return st.invariant_violation(); }
};

struct ListAdapter {
    ListState st;
    ErrorCode reg(Side s, uint32_t rid, uint64_t len) { return st.reg(s, rid, len); }
    ErrorCode dereg(Side s, uint32_t rid) { return st.dereg(s, rid); }
    ErrorCode enq(Side s, const BufKey& b) { return st.enq(s, b); }
    ErrorCode deq_expect(Side s, const BufKey& b) { return st.deq_expect(s, b); }
    bool incoming_empty(Side s) const {
        return (s == Side::A ? st.l_ba() : st.l_ab()).empty();
    }
    std::optional<std::string> invariant_violation() const { return st.invariant_violation(); }
};

struct RingAdapter {
    RingModel st;
    explicit RingAdapter(uint32_t cap) : st(cap) {}
    ErrorCode reg(Side s, uint32_t rid, uint64_t len) { return st.reg(s, rid, len); }
    ErrorCode dereg(Side s, uint32_t rid) { return st.dereg(s, rid); }
    ErrorCode enq(Side s, const BufKey& b) { return st.enq(s, b); }
    ErrorCode deq_expect(Side s, const BufKey& b) { return st.deq_expect(s, b); }
    bool incoming_empty(Side s) const {
        return (s == Side::A ? st.lists().l_ba() : st.lists().l_ab()).empty();
    }
    std::optional<std::string> invariant_violation() const { return st.invariant_violation(); }
};

bool relations_hold(const SetAdapter& s, const ListAdapter& l, const RingAdapter& r,
                    std::string& why) {
    const std::set<BufKey> ab(l.st.l_ab().begin(), l.st.l_ab().end());
    const std::set<BufKey> ba(l.st.l_ba().begin(), l.st.l_ba().end());
    if (ab != s.st.q_ab() || ba != s.st.q_ba()) {
        why = "transfer sets disagree with the list projection";
        return false;
    }
    if (s.st.pools() != l.st.pools()) {
        why = "owned pools disagree between set and list level";
        return false;
    }
    if (!(r.st.lists() == l.st)) {
        why = "ring-level lists disagree with the unbounded lists";
        return false;
    }
    return true;
}

} // namespace

std::optional<Divergence> check_trace_level(const Trace& trace, Level level,
                                            uint32_t ring_capacity) {
    SetAdapter set_a;
    ListAdapter list_a;
    RingAdapter ring_a(ring_capacity);
    for (size_t i = 0; i < trace.size(); ++i) {
        std::optional<std::string> err;
        switch (level) {
        case Level::Set:  err = replay_event(set_a, trace[i], false); break;
        case Level::List: err = replay_event(list_a, trace[i], false); break;
        case Level::Ring: err = replay_event(ring_a, trace[i], true); break;
        }
        if (err) return Divergence{i, level, *err};
    }
    return std::nullopt;
}

std::optional<Divergence> check_refinement(const Trace& trace, const RefineOptions& opt) {
    SetAdapter sets;
    ListAdapter lists;
    RingAdapter rings(opt.ring_capacity);
    std::string why;
    for (size_t i = 0; i < trace.size(); ++i) {
        if (auto err = replay_event(sets, trace[i], false)) return Divergence{i, Level::Set, *err};
        if (auto err = replay_event(lists, trace[i], false))
            return Divergence{i, Level::List, *err};
        if (auto err = replay_event(rings, trace[i], true)) return Divergence{i, Level::Ring, *err};

        const bool check_now = opt.relation_check_stride != 0 &&
                               (i % opt.relation_check_stride == opt.relation_check_stride - 1);
        if ((check_now || opt.check_invariants_each_step) &&
            !relations_hold(sets, lists, rings, why))
            return Divergence{i, Level::Ring, why};
        if (opt.check_invariants_each_step) {
            if (auto v = sets.invariant_violation()) return Divergence{i, Level::Set, *v};
            if (auto v = lists.invariant_violation()) return Divergence{i, Level::List, *v};
            if (auto v = rings.invariant_violation()) return Divergence{i, Level::Ring, *v};
        }
    }
    if (!relations_hold(sets, lists, rings, why))
        return Divergence{trace.size(), Level::Ring, why};
    if (auto v = sets.invariant_violation()) return Divergence{trace.size(), Level::Set, *v};
    if (auto v = lists.invariant_violation()) return Divergence{trace.size(), Level::List, *v};
    if (auto v = rings.invariant_violation()) return Divergence{trace.size(), Level::Ring, *v};
    return std::nullopt;
}

} // namespace cleanq::model
