#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mpcbench::harness {

/// Evaluates fn(0) .. fn(n-1) on up to `threads` workers and returns the
/// results in index order. The first exception thrown by any cell is rethrown
/// after all workers stop.
template <typename R, typename F>
std::vector<R> parallel_map(std::size_t n, std::size_t threads, F&& fn) {
    std::vector<R> out(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        }
    };
    const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), n);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace mpcbench::harness
