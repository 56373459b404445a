#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace kapitsa {

// Worker count: KAPITSA_THREADS caps it, unset means hardware default.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("KAPITSA_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) return static_cast<unsigned>(v);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return hw;
}

// Static-chunked parallel loop; f(i) must be safe to run concurrently for
// distinct i. Exceptions propagate from the calling thread's chunk only;
// worker chunks rethrow after join.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const unsigned nt = std::min<std::size_t>(worker_count(), n ? n : 1);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::exception_ptr> errs(nt);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += nt) f(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace kapitsa
