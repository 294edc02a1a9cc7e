#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace costpath {

// Thread count resolution: an explicit request wins, then the
// COSTPATH_THREADS environment variable, then the hardware count.
int resolve_thread_count(int requested);

namespace detail {

template <class Fn>
void run_blocks(std::size_t count, int threads, std::size_t block, Fn&& fn) {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t begin = next.fetch_add(block);
            if (begin >= count) break;
            const std::size_t end = std::min(begin + block, count);
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

// Runs fn(i) for i in [0, count). Workers pull contiguous index blocks, so
// callers that write results into slot i of a preallocated buffer get output
// independent of the worker count. The first exception thrown by any task is
// rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (count == 0) return;
    threads = resolve_thread_count(threads);
    if (threads > static_cast<int>(count)) threads = static_cast<int>(count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t block =
        std::max<std::size_t>(1, count / (static_cast<std::size_t>(threads) * 8));
    detail::run_blocks(count, threads, block, fn);
}

}  // namespace costpath
