#pragma once

#include <vector>

#include "cleanq/queue.hpp"
#include "cleanq/region_table.hpp"

namespace cleanq::net {

/*
 * Base for the header modules. They rewrite bytes inside buffers, so
 * unlike the plain passthrough stages they need addresses: the module
 * watches registrations flow past and keeps its own rid -> region map.
 * A handful of regions per queue, linear scan wins.
 */
class FramingModule : public PassthroughModule {
public:
    explicit FramingModule(QueueModule& lower) : PassthroughModule(lower) {}

    ErrorCode register_region(const RegionInfo& region) override {
        const ErrorCode r = lower().register_region(region);
        if (r == ErrorCode::OK) {
            forget(region.rid);
            regions_.push_back(region);
        }
        return r;
    }

    ErrorCode deregister_region(uint32_t rid) override {
        const ErrorCode r = lower().deregister_region(rid);
        if (r == ErrorCode::OK)
            forget(rid);
        return r;
    }

protected:
    const RegionInfo* region_of(uint32_t rid) const {
        for (const RegionInfo& r : regions_)
            if (r.rid == rid)
                return &r;
        return nullptr;
    }

    static uint8_t* bytes_at(const RegionInfo& region, uint64_t offset) {
        return reinterpret_cast<uint8_t*>(region.base) + offset;
    }

private:
    void forget(uint32_t rid) {
        for (size_t i = 0; i < regions_.size(); ++i) {
            if (regions_[i].rid == rid) {
                regions_[i] = regions_.back();
                regions_.pop_back();
                return;
            }
        }
    }

    std::vector<RegionInfo> regions_;
};

} // namespace cleanq::net
