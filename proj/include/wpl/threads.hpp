#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace wpl {

// Static block split of [0, n) over nthreads workers. Results must be written
// by index so the aggregate is independent of the thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                         unsigned nthreads = 0) {
    if (n == 0) return;
    if (nthreads == 0) nthreads = std::thread::hardware_concurrency();
    if (nthreads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (nthreads > n) nthreads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::size_t chunk = (n + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace wpl
