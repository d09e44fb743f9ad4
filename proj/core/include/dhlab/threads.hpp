#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dhlab {

/// Resolve a thread-count request: n > 0 means n threads, n == 0 consults
/// DH_LAB_THREADS and then hardware_concurrency.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DH_LAB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(block) for block = 0..n_blocks-1 on up to `threads` threads.
/// Blocks are handed out round-robin by index, so any per-block outputs the
/// caller stores can be reduced in block order afterwards; results are then
/// independent of the thread count.
template <typename Fn>
void parallel_blocks(std::size_t n_blocks, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n_blocks <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    std::size_t nt = std::min<std::size_t>(threads, n_blocks);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t b = t; b < n_blocks; b += nt) fn(b);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace dhlab
