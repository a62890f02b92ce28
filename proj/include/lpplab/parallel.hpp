#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace lpplab {

/*
 * Runs body(0..count-1) on `threads` workers pulling indices from a shared
 * counter. Callers own per-index output slots, so results do not depend on
 * scheduling; threads == 1 runs inline on the calling thread.
 */
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, const Body& body) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = threads < count ? threads : static_cast<unsigned>(count);
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

} // namespace lpplab
