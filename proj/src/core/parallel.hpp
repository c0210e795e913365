#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace sobolhd {

// Splits [0, n) into contiguous chunks, one worker thread per chunk. Callers
// must write to disjoint outputs; results are deterministic regardless of
// scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    std::size_t workers = std::min<std::size_t>(std::thread::hardware_concurrency(), n);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace sobolhd
