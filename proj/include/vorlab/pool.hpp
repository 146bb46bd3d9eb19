// Bounded worker pool for independent sweep points and validation checks.
// Results are merged by index, so the output order never depends on the
// scheduling. Worker count comes from the VORLAB_WORKERS environment
// variable (default 1).
#pragma once
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace vorlab {

inline int worker_count() {
    const char* env = std::getenv("VORLAB_WORKERS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

// Run job(i) for i in [0, n) on up to `workers` threads. Exceptions are
// rethrown on the caller thread (first one wins).
inline void parallel_for(int n, const std::function<void(int)>& job, int workers = -1) {
    if (workers <= 0) workers = worker_count();
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) job(i);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) job(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace vorlab
