#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hsf {

namespace detail {
inline std::atomic<std::size_t> max_workers{0};
}

/// Caps the worker threads used by chunked loops; 0 means hardware
/// concurrency. Results never depend on this value.
inline void set_max_workers(std::size_t n) { detail::max_workers.store(n); }

inline std::size_t worker_count(std::size_t tasks) {
    std::size_t w = detail::max_workers.load();
    if (w == 0) w = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(w, tasks));
}

/// Calls body(i) for every i in [0, tasks). Workers take indices in a fixed
/// stride; callers write into slot i only, so output order is by index.
template <typename Body>
void parallel_for(std::size_t tasks, Body&& body) {
    const std::size_t workers = worker_count(tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < tasks; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace hsf
