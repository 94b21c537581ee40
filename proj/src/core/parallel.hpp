#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ebel {

// Runs body(lo, hi) over a partition of [0, nitems) into contiguous chunks,
// one per thread. Workers must only write to slots they own (indexed results),
// which keeps output independent of the thread count.
inline void parallel_for(long nitems, int threads,
                         const std::function<void(long, long)>& body) {
    if (threads < 1) threads = 1;
    if (threads > nitems) threads = nitems > 0 ? static_cast<int>(nitems) : 1;
    if (threads == 1) {
        body(0, nitems);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    const long chunk = (nitems + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const long lo = t * chunk;
        const long hi = std::min(nitems, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace ebel
