#pragma once

#include <cstdint>
#include <vector>

#include "lmt/table.hpp"

namespace lmt {

struct SieveConfig {
    std::uint64_t limit = 0;                 ///< inclusive upper bound N, ≥ 1
    std::uint64_t segment_size = 1u << 22;   ///< values per segment (rounded up to a multiple of 64 internally)
    bool include_omega = false;              ///< materialize the Ω byte channel
    unsigned threads = 0;                    ///< worker count; 0 = hardware concurrency
    std::uint64_t memory_budget_bytes = 2ull << 30; ///< upper bound on estimated allocations
};

/// Estimated peak allocation for a sieve run (output table + per-worker scratch).
std::uint64_t sieve_memory_estimate(const SieveConfig& config);

/// Computes λ(n), the square-free indicator, and optionally Ω(n) for every
/// n in [1, limit] with a segmented sieve of Eratosthenes.
///
/// Per segment, for each base prime p ≤ √N, one pass per prime power walks
/// the multiples of p^k, incrementing the Ω accumulator and dividing the
/// tracked cofactor by p; the p² pass also clears the square-free flag.
/// Any n whose divided-out cofactor exceeds 1 afterwards has exactly one
/// prime factor > √N, so Ω gains 1. The result is identical for every
/// segment size and worker count: each n is fully resolved inside its own
/// segment and workers write disjoint, word-aligned output slices.
FactorSignTable sieve_range(const SieveConfig& config);

/// Trial-division reference: Ω, λ, square-free by dividing out primes up to
/// √n. Used in tests and spot checks. Throws InvalidArgumentError for n = 0.
NValues factor_oracle(std::uint64_t n);

/// Primes ≤ limit in increasing order (simple Eratosthenes bit sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

} // namespace lmt
