#pragma once

#include <memory>

#include "cleanq/buffer.hpp"
#include "cleanq/error.hpp"
#include "cleanq/region_table.hpp"
#include "cleanq/trace.hpp"

namespace cleanq {

/*
 * One layer of a queue stack. Concrete implementations are either backends
 * (they own the transfer mechanism: ring pair, loopback, socket) or modules
 * wrapping a lower layer. A chain is driven by one thread at a time.
 */
class QueueModule {
public:
    virtual ~QueueModule() = default;

    virtual ErrorCode enqueue(const BufferToken& b) = 0;
    virtual ErrorCode dequeue(BufferToken& out) = 0;
    virtual ErrorCode register_region(const RegionInfo& r) = 0;
    virtual ErrorCode deregister_region(uint32_t rid) = 0;
    virtual ErrorCode notify() = 0;
};

/* Base for stacked modules: delegates everything to the layer below. */
class PassthroughModule : public QueueModule {
public:
    explicit PassthroughModule(QueueModule& lower) : lower_(lower) {}

    ErrorCode enqueue(const BufferToken& b) override { return lower_.enqueue(b); }
    ErrorCode dequeue(BufferToken& out) override { return lower_.dequeue(out); }
    ErrorCode register_region(const RegionInfo& r) override { return lower_.register_region(r); }
    ErrorCode deregister_region(uint32_t rid) override { return lower_.deregister_region(rid); }
    ErrorCode notify() override { return lower_.notify(); }

protected:
    QueueModule& lower() { return lower_; }

private:
    QueueModule& lower_;
};

/*
 * The public face of one side of a queue: validates every argument against
 * the shared region table, keeps the per-side owned-byte counts that gate
 * deregistration, then dispatches into the top of the module chain. An
 * out-of-bounds token never reaches a module or backend.
 */
class Endpoint {
public:
    Endpoint(Side side, QueueModule& top, std::shared_ptr<RegionTable> regions)
        : side_(side), top_(top), regions_(std::move(regions)) {}

    ErrorCode register_region(void* base, uint64_t length, uint32_t& rid_out);
    ErrorCode deregister_region(uint32_t rid);
    ErrorCode enqueue(const BufferToken& b);
    ErrorCode dequeue(BufferToken& out);
    ErrorCode notify();

    Side side() const { return side_; }
    RegionTable& regions() { return *regions_; }
    const std::shared_ptr<RegionTable>& regions_ptr() const { return regions_; }
    QueueModule& top() { return top_; }

private:
    Side side_;
    QueueModule& top_;
    std::shared_ptr<RegionTable> regions_;
};

} // namespace cleanq
