#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "cleanq/trace.hpp"

namespace cleanq::bench {

struct FuzzOptions {
    uint64_t seed = 1;
    size_t ops = 100000;
    uint32_t ring_capacity = 8;
    uint32_t buffers = 8;     /* one region carved into this many buffers */
    uint64_t buffer_len = 64;
    size_t relation_check_stride = 256;
    bool check_invariants_each_step = false;
    /* Self-test hook: the intent at this index becomes a dequeue whose
     * recorded result lies (a success logged as empty, or a phantom
     * buffer logged on an empty queue), planting a divergence the
     * checker must catch and the shrinker must isolate. SIZE_MAX
     * disables it. */
    size_t forge_at = SIZE_MAX;
};

struct FuzzResult {
    bool diverged = false;
    std::string detail; /* first complaint, with its model level */
    size_t step = 0;    /* trace index of the divergence */
    cleanq::Trace trace;
    cleanq::Trace shrunk; /* reduced diverging re-execution, if one was found */
    size_t ops_executed = 0;
};

/*
 * Drives a real ring pair through both endpoints with a seeded stream of
 * legal client ops, then replays the recorded trace against all three
 * model levels. The driver skips intents that are illegal in its current
 * ownership state, so every executed trace is a legal run and any checker
 * complaint is a genuine divergence between implementation and model. On
 * divergence the intent stream is shrunk by prefix bisection plus greedy
 * removal, re-executing candidates to keep the witness real.
 */
FuzzResult fuzz_refinement(const FuzzOptions& opt);

/*
 * Drives the pointer-level ring model with the overtake guard removed and
 * a producer biased to ignore backpressure; reports the first step where
 * the pointer ordering breaks. found=false means max_ops passed clean.
 */
struct GuardProbe {
    bool found = false;
    size_t step = 0;
};
GuardProbe probe_overtake_guard(uint64_t seed, size_t max_ops, uint32_t capacity);

} // namespace cleanq::bench
