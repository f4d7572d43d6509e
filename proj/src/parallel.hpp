#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gprank::detail {

/// Calls fn(chunk, begin, end) for every fixed-size chunk of [0, total),
/// spreading chunks over `workers` threads. Chunk boundaries do not depend
/// on the worker count. The first exception thrown is rethrown.
template <class Fn>
void for_each_chunk(std::size_t total, std::size_t chunk_size, unsigned workers, Fn&& fn) {
    const std::size_t chunks = (total + chunk_size - 1) / chunk_size;
    auto run_chunk = [&](std::size_t c) { fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size)); };
    if (workers <= 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> threads;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
    for (unsigned t = 0; t < count; ++t) {
        threads.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) {
                try {
                    run_chunk(c);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    threads.clear();
    if (error) std::rethrow_exception(error);
}

}  // namespace gprank::detail
