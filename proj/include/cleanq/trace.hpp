#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cleanq/error.hpp"

namespace cleanq {

enum class Side : uint8_t { A = 0, B = 1 };

constexpr const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }
constexpr Side peer_of(Side s) { return s == Side::A ? Side::B : Side::A; }

enum class OpKind : uint8_t { Register = 0, Deregister, Enqueue, Dequeue };

constexpr const char* op_name(OpKind k) {
    switch (k) {
    case OpKind::Register:   return "reg";
    case OpKind::Deregister: return "dereg";
    case OpKind::Enqueue:    return "enq";
    case OpKind::Dequeue:    return "deq";
    }
    return "?";
}

/*
 * One observed operation. Timestamps are monotonic nanoseconds taken after
 * the call returned. For dequeue, rid/off/len describe the returned token
 * (zero when the call failed); for register they describe the new region.
 */
struct TraceEvent {
    uint64_t t = 0;
    Side actor = Side::A;
    OpKind op = OpKind::Enqueue;
    uint32_t rid = 0;
    uint64_t off = 0;
    uint64_t len = 0;
    ErrorCode result = ErrorCode::OK;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using Trace = std::vector<TraceEvent>;

/* "ok" | "full" | "empty" | "err:<code>" */
std::string result_string(ErrorCode e);
bool parse_result(std::string_view s, ErrorCode& out);

std::string to_json_line(const TraceEvent& e);
bool parse_json_line(const std::string& line, TraceEvent& out);

void write_trace(std::ostream& os, const Trace& t);
/* Returns false on the first malformed line; events parsed so far are kept. */
bool read_trace(std::istream& is, Trace& out);

uint64_t monotonic_ns();

} // namespace cleanq
