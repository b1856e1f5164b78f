#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace homog {

// Worker count: HOMOG_THREADS caps it, hardware concurrency is the default.
inline int thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("HOMOG_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < long(hw)) hw = unsigned(cap);
    }
    return int(hw);
}

// Static partition of [0, count); results must be written by index so the
// reduction order stays deterministic.
inline void parallel_for(int count, const std::function<void(int)>& body) {
    const int workers = std::min(thread_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace homog
