// parallel.hpp — deterministic parallel-for over independent row indices.
// Each index writes its own output slot, so results are bit-identical for any
// worker count. Worker count: explicit argument > QUDITMET_WORKERS > hardware.

#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace quditmet {

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QUDITMET_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

template <typename Body>
void parallel_for(std::size_t count, int workers, const Body& body) {
    const int n = resolve_workers(workers);
    if (n <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    const std::size_t stride = static_cast<std::size_t>(n);
    threads.reserve(stride);
    for (std::size_t w = 0; w < stride; ++w) {
        threads.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += stride) body(i);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace quditmet
