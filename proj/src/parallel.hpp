#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace uipt {

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). Each index is independent; callers pre-size result slots so
// the outcome does not depend on scheduling.
inline void parallel_for(long n, int threads, const std::function<void(long)>& fn) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 4 : static_cast<int>(hw);
    }
    if (threads > n) threads = static_cast<int>(n);
    if (threads <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace uipt
