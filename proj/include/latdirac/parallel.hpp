#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace latdirac {

/// Worker-thread count used by the site/pair loops. Every parallel loop in
/// the engine writes each result into a slot that depends only on the item
/// index, so output is bit-identical for any thread count.
inline int& worker_threads() {
    static int n = 1;
    return n;
}

template <typename F>
void parallel_for(long count, F&& fn) {
    const int nt = std::max(1, worker_threads());
    if (nt == 1 || count < 64) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (count + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const long lo = t * chunk, hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn]() {
            for (long i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace latdirac
