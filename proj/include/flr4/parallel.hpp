// parallel.hpp — index-parallel loop used by grid evaluations and sweeps.
//
// Each index writes only its own output slot, so results do not depend on
// the worker count. Nested calls run serially on the calling worker.

#pragma once

#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace flr4 {

// Worker cap from FLR4_THREADS (unset or 0 = hardware concurrency).
std::size_t worker_count();

namespace detail {
inline thread_local bool in_parallel_region = false;
}

template <class Body>
void parallel_for(std::size_t n, Body&& body)
{
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1 || detail::in_parallel_region) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    // The failure with the lowest index wins, matching the serial loop.
    std::mutex failure_mutex;
    std::size_t failed_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr failure;

    auto run = [&](std::size_t first) {
        detail::in_parallel_region = true;
        for (std::size_t i = first; i < n; i += workers) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
                break;
            }
        }
        detail::in_parallel_region = false;
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace flr4
