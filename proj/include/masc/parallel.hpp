#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace masc {

/// Worker cap: MASC_THREADS when set (min 1), else hardware concurrency.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("MASC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs fn(i) for i in [0, count) across at most thread_budget() threads.
/// Tasks must be independent; results are typically written to disjoint
/// slots, so output stays deterministic regardless of scheduling.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(thread_budget(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace masc
