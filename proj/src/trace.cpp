#include "cleanq/trace.hpp"

#include <chrono>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace cleanq {

std::string result_string(ErrorCode e) {
    switch (e) {
    case ErrorCode::OK:          return "ok";
    case ErrorCode::QUEUE_FULL:  return "full";
    case ErrorCode::QUEUE_EMPTY: return "empty";
    default:                     return "err:" + std::string(error_name(e));
    }
}

bool parse_result(std::string_view s, ErrorCode& out) {
    if (s == "ok")    { out = ErrorCode::OK; return true; }
    if (s == "full")  { out = ErrorCode::QUEUE_FULL; return true; }
    if (s == "empty") { out = ErrorCode::QUEUE_EMPTY; return true; }
    if (!s.starts_with("err:")) return false;
    const std::string_view code = s.substr(4);
    for (auto e : {ErrorCode::INVALID_REGION, ErrorCode::INVALID_BUFFER, ErrorCode::REGION_OVERLAP,
                   ErrorCode::REGION_BUSY, ErrorCode::OWNERSHIP_VIOLATION, ErrorCode::BACKEND_ERROR}) {
        if (code == error_name(e)) { out = e; return true; }
    }
    return false;
}

namespace {

bool parse_op(std::string_view s, OpKind& out) {
    if (s == "reg")   { out = OpKind::Register; return true; }
    if (s == "dereg") { out = OpKind::Deregister; return true; }
    if (s == "enq")   { out = OpKind::Enqueue; return true; }
    if (s == "deq")   { out = OpKind::Dequeue; return true; }
    return false;
}

} // namespace

std::string to_json_line(const TraceEvent& e) {
    nlohmann::json j;
    j["t"] = e.t;
    j["actor"] = side_name(e.actor);
    j["op"] = op_name(e.op);
    j["rid"] = e.rid;
    j["off"] = e.off;
    j["len"] = e.len;
    j["result"] = result_string(e.result);
    return j.dump();
}

bool parse_json_line(const std::string& line, TraceEvent& out) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return false;
    for (const char* key : {"t", "actor", "op", "rid", "off", "len", "result"})
        if (!j.contains(key)) return false;
    if (!j["t"].is_number() || !j["rid"].is_number() || !j["off"].is_number() || !j["len"].is_number())
        return false;
    if (!j["actor"].is_string() || !j["op"].is_string() || !j["result"].is_string()) return false;

    const std::string actor = j["actor"];
    if (actor == "A") out.actor = Side::A;
    else if (actor == "B") out.actor = Side::B;
    else return false;

    if (!parse_op(j["op"].get<std::string>(), out.op)) return false;
    if (!parse_result(j["result"].get<std::string>(), out.result)) return false;
    out.t = j["t"];
    out.rid = j["rid"];
    out.off = j["off"];
    out.len = j["len"];
    return true;
}

void write_trace(std::ostream& os, const Trace& t) {
    for (const auto& e : t) os << to_json_line(e) << '\n';
}

bool read_trace(std::istream& is, Trace& out) {
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        TraceEvent e;
        if (!parse_json_line(line, e)) return false;
        out.push_back(e);
    }
    return true;
}

uint64_t monotonic_ns() {
    return static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now().time_since_epoch())
            .count());
}

} // namespace cleanq
