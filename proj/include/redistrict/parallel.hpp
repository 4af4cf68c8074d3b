#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace redistrict {

/// Runs fn(begin, end) over [0, n) split into contiguous chunks across
/// hardware threads. Falls back to a direct call for small n. The first
/// exception thrown by any worker is rethrown on the calling thread.
inline void parallel_for(std::size_t n, std::size_t grain,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t max_threads = hw == 0 ? 1 : hw;
    std::size_t chunks = std::min(max_threads, (n + grain - 1) / grain);
    if (chunks <= 1) {
        fn(0, n);
        return;
    }

    std::vector<std::thread> workers;
    workers.reserve(chunks);
    std::exception_ptr first_error;
    std::atomic<bool> has_error{false};
    std::mutex error_mutex;

    std::size_t per = (n + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t begin = c * per;
        std::size_t end = std::min(n, begin + per);
        if (begin >= end) break;
        workers.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!has_error.exchange(true)) first_error = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (has_error) std::rethrow_exception(first_error);
}

}  // namespace redistrict
