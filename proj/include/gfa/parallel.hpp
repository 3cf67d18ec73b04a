// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace gfa {

// Static block partition of [0, n) over at most `workers` threads.
// Each worker owns a contiguous index range and writes only its own slots,
// so results are independent of scheduling and of the worker count.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& body) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t w = workers < n ? workers : n;
    const std::size_t chunk = (n + w - 1) / w;
    std::vector<std::thread> threads;
    threads.reserve(w - 1);
    for (std::size_t i = 1; i < w; ++i) {
        const std::size_t lo = i * chunk;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        threads.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    body(std::size_t{0}, chunk < n ? chunk : n);
    for (auto& t : threads) t.join();
}

} // namespace gfa
