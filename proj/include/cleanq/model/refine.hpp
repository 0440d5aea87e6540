#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cleanq/model/state.hpp"
#include "cleanq/trace.hpp"

namespace cleanq::model {

enum class Level : uint8_t { Set = 0, List = 1, Ring = 2 };

constexpr const char* level_name(Level l) {
    switch (l) {
    case Level::Set:  return "set";
    case Level::List: return "list";
    case Level::Ring: return "ring";
    }
    return "?";
}

struct Divergence {
    size_t step = 0; // index into the trace
    Level level = Level::Set;
    std::string reason;
};

struct RefineOptions {
    uint32_t ring_capacity = 8; // slots per direction at the ring level
    /* How often the cross-level state relations are re-verified. Every
     * step is affordable for short traces; long fuzz runs sample. */
    size_t relation_check_stride = 1024;
    bool check_invariants_each_step = false;
};

/*
 * Replays a single-threaded trace against one model level and verifies the
 * recorded result of every operation matches what the model allows. A
 * "full" result is accepted by the unbounded levels as a no-op with error
 * (the bounded ring refines them that way) but must be exact at ring
 * level.
 */
std::optional<Divergence> check_trace_level(const Trace& trace, Level level,
                                            uint32_t ring_capacity);

/*
 * Replays the trace against all three levels at once, verifying results at
 * each level plus the state relations between them (the set projection of
 * the lists equals the transfer sets; the ring's lists equal the unbounded
 * lists whenever the trace stayed within capacity).
 */
std::optional<Divergence> check_refinement(const Trace& trace, const RefineOptions& opt = {});

} // namespace cleanq::model
