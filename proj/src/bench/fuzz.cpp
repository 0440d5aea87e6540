#include "cleanq/bench/fuzz.hpp"

#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "cleanq/model/refine.hpp"
#include "cleanq/model/state.hpp"
#include "cleanq/queue.hpp"
#include "cleanq/ringq.hpp"

namespace cleanq::bench {

namespace {

struct Intent {
    uint8_t kind = 0; /* 0 A-enq, 1 A-deq, 2 B-enq, 3 B-deq */
    uint32_t buf = 0; /* preferred buffer index for enqueues */
    bool forge = false;
};

struct Run {
    Trace trace;
    size_t executed = 0;
};

/* Execute an intent stream against a fresh ring pair. Enqueue intents pick
 * the first held buffer at or after the preferred index and are dropped
 * when the actor holds nothing, so the stream stays a legal client no
 * matter how the shrinker carved it up. */
Run execute(const std::vector<Intent>& intents, const FuzzOptions& opt) {
    Run run;
    auto table = std::make_shared<RegionTable>();
    auto ring = RingPair::create(opt.ring_capacity);
    if (!ring)
        return run;
    Endpoint ea(Side::A, ring->a(), table);
    Endpoint eb(Side::B, ring->b(), table);

    std::vector<uint8_t> mem(opt.buffers * opt.buffer_len);
    uint32_t rid = 0;
    if (ea.register_region(mem.data(), mem.size(), rid) != ErrorCode::OK)
        return run;
    run.trace.push_back(
        TraceEvent{monotonic_ns(), Side::A, OpKind::Register, rid, 0, mem.size(), ErrorCode::OK});
    run.trace.reserve(intents.size() + 1);

    std::vector<bool> held_a(opt.buffers, true);
    std::vector<bool> held_b(opt.buffers, false);

    auto log = [&](Side s, OpKind op, uint32_t r, uint64_t off, uint64_t len, ErrorCode e) {
        run.trace.push_back(TraceEvent{monotonic_ns(), s, op, r, off, len, e});
    };
    auto pick = [&](const std::vector<bool>& held, uint32_t want) -> int {
        for (uint32_t k = 0; k < opt.buffers; ++k) {
            const uint32_t j = (want + k) % opt.buffers;
            if (held[j])
                return static_cast<int>(j);
        }
        return -1;
    };
    auto do_enq = [&](Endpoint& ep, Side s, std::vector<bool>& held, const Intent& in) {
        const int i = pick(held, in.buf % opt.buffers);
        if (i < 0)
            return;
        BufferToken b;
        b.rid = rid;
        b.offset = static_cast<uint64_t>(i) * opt.buffer_len;
        b.length = opt.buffer_len;
        b.valid_length = opt.buffer_len;
        ErrorCode e = ep.enqueue(b);
        if (e == ErrorCode::OK)
            held[static_cast<size_t>(i)] = false;
        if (in.forge)
            e = (e == ErrorCode::OK) ? ErrorCode::QUEUE_FULL : ErrorCode::OK;
        log(s, OpKind::Enqueue, b.rid, b.offset, b.length, e);
    };
    auto do_deq = [&](Endpoint& ep, Side s, std::vector<bool>& held, const Intent& in) {
        BufferToken out;
        const ErrorCode e = ep.dequeue(out);
        if (e == ErrorCode::OK) {
            held[out.offset / opt.buffer_len] = true;
            if (in.forge) /* pretend we saw nothing */
                log(s, OpKind::Dequeue, 0, 0, 0, ErrorCode::QUEUE_EMPTY);
            else
                log(s, OpKind::Dequeue, out.rid, out.offset, out.length, e);
        } else if (in.forge) { /* pretend a phantom buffer arrived */
            log(s, OpKind::Dequeue, rid, 0, opt.buffer_len, ErrorCode::OK);
        } else {
            log(s, OpKind::Dequeue, 0, 0, 0, e);
        }
    };

    for (const Intent& in : intents) {
        switch (in.kind % 4) {
        case 0: do_enq(ea, Side::A, held_a, in); break;
        case 1: do_deq(ea, Side::A, held_a, in); break;
        case 2: do_enq(eb, Side::B, held_b, in); break;
        case 3: do_deq(eb, Side::B, held_b, in); break;
        }
        ++run.executed;
    }
    return run;
}

std::optional<model::Divergence> verdict(const Trace& t, const FuzzOptions& opt) {
    model::RefineOptions ro;
    ro.ring_capacity = opt.ring_capacity;
    ro.relation_check_stride = opt.relation_check_stride;
    ro.check_invariants_each_step = opt.check_invariants_each_step;
    return model::check_refinement(t, ro);
}

} // namespace

FuzzResult fuzz_refinement(const FuzzOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::vector<Intent> intents;
    intents.reserve(opt.ops);
    for (size_t i = 0; i < opt.ops; ++i) {
        Intent in;
        in.kind = static_cast<uint8_t>(rng() & 3);
        in.buf = static_cast<uint32_t>(rng());
        intents.push_back(in);
    }
    if (opt.forge_at != SIZE_MAX && !intents.empty()) {
        /* plant the lie on a dequeue intent: those always execute, so the
         * forgery fires deterministically and travels with its intent
         * through shrinking */
        const size_t target = opt.forge_at < intents.size() ? opt.forge_at : intents.size() - 1;
        intents[target].kind |= 1; /* 0,2 -> 1,3: turn it into a dequeue */
        intents[target].forge = true;
    }

    FuzzResult res;
    Run run = execute(intents, opt);
    res.trace = run.trace;
    res.ops_executed = run.executed;

    auto d = verdict(run.trace, opt);
    if (!d)
        return res;
    res.diverged = true;
    res.step = d->step;
    res.detail = std::string(model::level_name(d->level)) + ": " + d->reason;

    /* shortest diverging prefix, by bisection */
    size_t lo = 1, hi = intents.size();
    while (lo < hi) {
        const size_t mid = lo + (hi - lo) / 2;
        const std::vector<Intent> pre(intents.begin(),
                                      intents.begin() + static_cast<ptrdiff_t>(mid));
        if (verdict(execute(pre, opt).trace, opt))
            hi = mid;
        else
            lo = mid + 1;
    }
    std::vector<Intent> cur(intents.begin(), intents.begin() + static_cast<ptrdiff_t>(lo));

    /* greedy removal; skipped for huge witnesses, the prefix is already usable */
    if (cur.size() <= 600) {
        bool changed = true;
        while (changed && cur.size() > 1) {
            changed = false;
            for (size_t i = cur.size(); i-- > 0 && cur.size() > 1;) {
                std::vector<Intent> trial = cur;
                trial.erase(trial.begin() + static_cast<ptrdiff_t>(i));
                if (verdict(execute(trial, opt).trace, opt)) {
                    cur = std::move(trial);
                    changed = true;
                }
            }
        }
    }
    res.shrunk = execute(cur, opt).trace;
    return res;
}

GuardProbe probe_overtake_guard(uint64_t seed, size_t max_ops, uint32_t capacity) {
    std::mt19937_64 rng(seed);
    model::HwRingModel hw(capacity);
    hw.set_skip_full_check(true);

    std::deque<model::BufKey> at_b; /* B's holdings, oldest first */
    uint64_t next_off = 0;
    GuardProbe res;

    for (size_t i = 1; i <= max_ops; ++i) {
        switch (rng() & 3) {
        case 0:
        case 1: { /* biased toward producing: this driver ignores backpressure */
            const model::BufKey b{0, next_off, 64};
            if (hw.enq_a(b) == ErrorCode::OK)
                next_off += 64;
            break;
        }
        case 2: {
            model::BufKey out{};
            if (hw.deq_b(out) == ErrorCode::OK)
                at_b.push_back(out);
            break;
        }
        case 3: {
            if (!at_b.empty()) {
                if (hw.enq_b(at_b.front()) == ErrorCode::OK)
                    at_b.pop_front();
            } else {
                model::BufKey out{};
                hw.deq_a(out);
            }
            break;
        }
        }
        if (!hw.pointer_order_ok()) {
            res.found = true;
            res.step = i;
            return res;
        }
    }
    return res;
}

} // namespace cleanq::bench
