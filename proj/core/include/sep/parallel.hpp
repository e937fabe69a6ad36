#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sep {

/// Runs fn(i) for i in [0, n) across `workers` threads with a static block
/// partition. Results must be written to disjoint, preallocated slots so the
/// outcome is identical for any worker count; the caller merges in index
/// order afterwards.
template <class Fn>
void parallel_for(size_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const size_t w = std::min<size_t>(static_cast<size_t>(workers), n);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(w);
    const size_t chunk = (n + w - 1) / w;
    for (size_t t = 0; t < w; ++t) {
        const size_t lo = t * chunk;
        const size_t hi = std::min(n, lo + chunk);
        threads.emplace_back([&, t, lo, hi] {
            try {
                for (size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace sep
