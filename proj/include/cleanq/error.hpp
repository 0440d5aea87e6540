#pragma once

#include <cstdint>
#include <string_view>

namespace cleanq {

/* Every public operation either succeeds or reports exactly one of these. */
enum class ErrorCode : uint8_t {
    OK = 0,
    QUEUE_FULL,
    QUEUE_EMPTY,
    INVALID_REGION,
    INVALID_BUFFER,
    REGION_OVERLAP,
    REGION_BUSY,
    OWNERSHIP_VIOLATION,
    BACKEND_ERROR,
};

constexpr bool ok(ErrorCode e) { return e == ErrorCode::OK; }

constexpr std::string_view error_name(ErrorCode e) {
    switch (e) {
    case ErrorCode::OK:                  return "ok";
    case ErrorCode::QUEUE_FULL:          return "queue_full";
    case ErrorCode::QUEUE_EMPTY:         return "queue_empty";
    case ErrorCode::INVALID_REGION:      return "invalid_region";
    case ErrorCode::INVALID_BUFFER:      return "invalid_buffer";
    case ErrorCode::REGION_OVERLAP:      return "region_overlap";
    case ErrorCode::REGION_BUSY:         return "region_busy";
    case ErrorCode::OWNERSHIP_VIOLATION: return "ownership_violation";
    case ErrorCode::BACKEND_ERROR:       return "backend_error";
    }
    return "unknown";
}

} // namespace cleanq
