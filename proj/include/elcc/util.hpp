#pragma once

#include <charconv>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace elcc {

/// Runs fn(0..count) across up to `threads` workers. Work items must be
/// independent; determinism comes from indexing, not scheduling.
inline void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = std::min<std::uint64_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::uint64_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

/// Locale-independent shortest-round-trip double formatting (std::to_chars),
/// so emitted CSV/JSON bytes are reproducible.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace elcc
