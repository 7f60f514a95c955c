#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace lmt::detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits the bit-index interval [i0, i1) into word-aligned chunks, runs
/// `scan(a, b)` on each, and merges the partial counts with += in chunk
/// order. Counts are exact integers, so the merge is independent of
/// scheduling.
template <typename Counts, typename ScanFn>
Counts chunked_scan(std::uint64_t i0, std::uint64_t i1, unsigned threads, ScanFn&& scan) {
    constexpr std::uint64_t kGrainBits = 1u << 21;
    Counts total{};
    if (i1 <= i0) return total;
    unsigned want = resolve_threads(threads);
    std::uint64_t max_chunks = (i1 - i0 + kGrainBits - 1) / kGrainBits;
    if (want > max_chunks) want = static_cast<unsigned>(max_chunks);
    if (want <= 1) return scan(i0, i1);

    std::uint64_t words = (i1 - i0 + 63) / 64;
    std::uint64_t words_per_chunk = (words + want - 1) / want;
    std::vector<Counts> partial(want);
    std::vector<std::thread> pool;
    pool.reserve(want);
    for (unsigned c = 0; c < want; ++c) {
        std::uint64_t a = i0 + c * words_per_chunk * 64;
        std::uint64_t b = std::min(i1, a + words_per_chunk * 64);
        if (a >= b) break;
        pool.emplace_back([&, a, b, c]() { partial[c] = scan(a, b); });
    }
    for (auto& t : pool) t.join();
    for (const auto& p : partial) total += p;
    return total;
}

} // namespace lmt::detail
