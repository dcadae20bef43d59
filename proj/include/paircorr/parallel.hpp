// parallel.hpp
//
// Tiny fork-join helper. PAIRCORR_THREADS caps the worker count; 0 or unset
// means one worker per hardware thread.

#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace paircorr {

inline unsigned max_threads() {
    if (const char* env = std::getenv("PAIRCORR_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(i) for i in [0, count). Each index is independent; results must be
// written to disjoint slots so the outcome is identical to a serial loop.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    unsigned workers = max_threads();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    if (workers > count)
        workers = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        std::size_t lo = count * t / workers;
        std::size_t hi = count * (t + 1) / workers;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace paircorr
