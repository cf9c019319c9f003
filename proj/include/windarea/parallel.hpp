#ifndef WINDAREA_PARALLEL_HPP
#define WINDAREA_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace windarea {

/// Default worker count: $WINDAREA_WORKERS if set and positive, else 1.
inline unsigned default_workers() {
    if (const char *env = std::getenv("WINDAREA_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

/// Run body(i) for i in [0, n) on up to `workers` threads. Items are claimed
/// dynamically; callers write results into slot i, so output never depends on
/// scheduling. The first exception thrown by any item is rethrown.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, const Body &body) {
    const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(run);
    run();
    for (auto &th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace windarea

#endif
