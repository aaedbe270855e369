#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace skein {

// Runs fn(i) for i in [0, n) across `threads` workers. Tasks are assigned
// by index stripe, each writes only its own results, so the outcome is
// deterministic and independent of scheduling.
inline void parallel_for(int threads, int n, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    int workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&fn, w, workers, n]() {
            for (int i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace skein
