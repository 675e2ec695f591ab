#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sixvertex {

inline constexpr const char* kThreadEnv = "SIXVERTEX_THREADS";

// SIXVERTEX_THREADS, else hardware concurrency
inline unsigned thread_count() {
    if (const char* s = std::getenv(kThreadEnv)) {
        char* end = nullptr;
        const long n = std::strtol(s, &end, 10);
        if (end != s && n >= 1) return static_cast<unsigned>(std::min<long>(n, 256));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {
inline thread_local bool in_worker = false;
}

// fn(i) for i in [0, n); results must be written by index so ordering never depends on scheduling.
// nested calls from inside a worker run serially
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
    if (threads == 0) threads = detail::in_worker ? 1u : thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            detail::in_worker = true;
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace sixvertex
