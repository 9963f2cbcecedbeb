#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace portree {

/// Worker count to use when the caller asks for 0 ("all cores").
[[nodiscard]] inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1U, std::thread::hardware_concurrency());
}

/**
 * @brief results[i] = task(i) for i in [0, count), spread over a worker pool.
 *
 * Workers pull indices from a shared counter and write only their own slots,
 * so the output order (and therefore every downstream reduction) does not
 * depend on scheduling. The first exception thrown by a task is rethrown.
 */
template <class T, class Task>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Task&& task) {
    std::vector<T> results(count);
    const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = task(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace portree
