#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fracwell {

/// Worker count: FRACWELL_THREADS if set to a positive integer, else the
/// hardware concurrency.
inline unsigned worker_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FRACWELL_THREADS")) {
        try {
            const long requested = std::stol(env);
            if (requested > 0) return static_cast<unsigned>(requested);
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    return hw;
}

/// Runs body(i) for i in [begin, end) over contiguous static blocks, one per
/// worker. Work assignment does not affect results as long as body(i) only
/// writes data owned by index i. The first exception thrown is rethrown.
template <class Body>
void parallel_for(std::size_t begin, std::size_t end, Body&& body)
{
    if (end <= begin) return;
    const std::size_t count = end - begin;
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + count * w / workers;
        const std::size_t hi = begin + count * (w + 1) / workers;
        threads.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace fracwell
