#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace qtrade {

inline unsigned resolve_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(begin, end) over contiguous chunks of [0, n). Workers write to
// disjoint, index-addressed slots only, so results are deterministic.
template <typename Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
    unsigned t = resolve_threads(threads);
    if (t <= 1 || n < 2 * t) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(t);
    std::size_t chunk = (n + t - 1) / t;
    for (unsigned w = 0; w < t; ++w) {
        std::size_t begin = w * chunk;
        if (begin >= n) break;
        std::size_t end = std::min(n, begin + chunk);
        workers.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : workers) th.join();
}

}  // namespace qtrade
