#pragma once

#include <cstddef>
#include <deque>

#include "cleanq/queue.hpp"

namespace cleanq {

/*
 * Single-endpoint backend: enqueued tokens come back on dequeue, in order.
 * The baseline for benchmarking modules and the bottom of single-actor
 * stacks in tests. Unbounded by default; a capacity can be set to make it
 * report QUEUE_FULL like a real ring.
 */
class LoopbackQueue final : public QueueModule {
public:
    explicit LoopbackQueue(size_t capacity = 0) : capacity_(capacity) {}

    ErrorCode enqueue(const BufferToken& b) override {
        if (capacity_ != 0 && fifo_.size() >= capacity_) return ErrorCode::QUEUE_FULL;
        fifo_.push_back(b);
        return ErrorCode::OK;
    }

    ErrorCode dequeue(BufferToken& out) override {
        if (fifo_.empty()) return ErrorCode::QUEUE_EMPTY;
        out = fifo_.front();
        fifo_.pop_front();
        return ErrorCode::OK;
    }

    ErrorCode register_region(const RegionInfo&) override { return ErrorCode::OK; }
    ErrorCode deregister_region(uint32_t) override { return ErrorCode::OK; }
    ErrorCode notify() override { return ErrorCode::OK; }

    size_t depth() const { return fifo_.size(); }

private:
    size_t capacity_;
    std::deque<BufferToken> fifo_;
};

} // namespace cleanq
