#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace vanetcast {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) over `threads` workers in contiguous
// chunks. fn must be safe to call concurrently for distinct i; results
// should be written into per-index slots so the outcome is independent of
// the schedule.
template <typename Fn>
void parallel_for(std::uint64_t count, int threads, Fn&& fn) {
    const std::uint64_t workers =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(resolve_threads(threads)), count);
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (count + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t lo = chunk * w;
        const std::uint64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::uint64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace vanetcast
