#pragma once

#include <cstdint>

namespace cleanq {

/*
 * Names one buffer in flight: the unit of ownership transfer.
 *
 * offset/length locate the buffer inside its region; valid_data is a cursor
 * relative to the buffer start and [valid_data, valid_data + valid_length)
 * is the window holding meaningful bytes. flags are opaque to the queue and
 * travel with the buffer.
 */
struct BufferToken {
    uint32_t rid = 0;
    uint64_t offset = 0;
    uint64_t length = 0;
    uint64_t valid_data = 0;
    uint64_t valid_length = 0;
    uint64_t flags = 0;

    friend bool operator==(const BufferToken&, const BufferToken&) = default;
};

/* The valid window fits inside the buffer. */
constexpr bool valid_window_ok(const BufferToken& b) {
    return b.valid_data <= b.length && b.valid_length <= b.length - b.valid_data;
}

} // namespace cleanq
