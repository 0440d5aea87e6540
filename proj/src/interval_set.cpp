#include "cleanq/interval_set.hpp"

#include <algorithm>

namespace cleanq {

namespace {

/* First interval whose begin is > lo, as an index. */
size_t upper_by_begin(const std::vector<IntervalSet::Interval>& v, uint64_t lo) {
    auto it = std::upper_bound(v.begin(), v.end(), lo,
                               [](uint64_t x, const IntervalSet::Interval& iv) { return x < iv.first; });
    return static_cast<size_t>(it - v.begin());
}

} // namespace

uint64_t IntervalSet::total_bytes() const {
    uint64_t n = 0;
    for (const auto& [lo, hi] : ivs_) n += hi - lo;
    return n;
}

bool IntervalSet::covers(uint64_t lo, uint64_t hi) const {
    if (lo >= hi) return true;
    size_t i = upper_by_begin(ivs_, lo);
    if (i == 0) return false;
    const auto& iv = ivs_[i - 1]; // begin <= lo
    return iv.second >= hi;
}

bool IntervalSet::intersects(uint64_t lo, uint64_t hi) const {
    if (lo >= hi) return false;
    size_t i = upper_by_begin(ivs_, lo);
    if (i > 0 && ivs_[i - 1].second > lo) return true;     // interval starting at/before lo reaches past it
    return i < ivs_.size() && ivs_[i].first < hi;          // next interval starts inside [lo, hi)
}

void IntervalSet::add(uint64_t lo, uint64_t hi) {
    if (lo >= hi) return;
    /* Merge with every interval overlapping or touching [lo, hi). */
    size_t first = upper_by_begin(ivs_, lo);
    if (first > 0 && ivs_[first - 1].second >= lo) --first;
    size_t last = first;
    while (last < ivs_.size() && ivs_[last].first <= hi) {
        lo = std::min(lo, ivs_[last].first);
        hi = std::max(hi, ivs_[last].second);
        ++last;
    }
    if (last - first == 1) { /* common case: widen one interval in place */
        ivs_[first] = {lo, hi};
        return;
    }
    ivs_.erase(ivs_.begin() + first, ivs_.begin() + last);
    ivs_.insert(ivs_.begin() + first, {lo, hi});
}

void IntervalSet::remove(uint64_t lo, uint64_t hi) {
    if (lo >= hi) return;
    size_t i = upper_by_begin(ivs_, lo);
    if (i > 0) {
        Interval& p = ivs_[i - 1]; // begin <= lo
        if (p.second > hi) {
            if (p.first == lo) { /* head trim */
                p.first = hi;
                return;
            }
            const uint64_t end = p.second; /* interior cut: split in two */
            p.second = lo;
            ivs_.insert(ivs_.begin() + i, {hi, end});
            return;
        }
        if (p.second > lo) {
            if (p.first == lo) --i; /* fully covered, fold into the erase */
            else p.second = lo;     /* tail trim */
        }
    }
    size_t j = i;
    while (j < ivs_.size() && ivs_[j].second <= hi) ++j;
    if (j < ivs_.size() && ivs_[j].first < hi) ivs_[j].first = hi;
    ivs_.erase(ivs_.begin() + i, ivs_.begin() + j);
}

} // namespace cleanq
