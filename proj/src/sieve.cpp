#include "lmt/sieve.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "lmt/errors.hpp"
#include "parallel.hpp"

namespace lmt {

using detail::resolve_threads;

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Segment size actually used: multiple of 64 so every worker owns whole
// words of the output bit arrays.
std::uint64_t internal_segment(std::uint64_t requested) {
    return (requested + 63) / 64 * 64;
}

struct SegmentScratch {
    std::vector<std::uint32_t> rem;
    std::vector<std::uint8_t> omega_local;
    std::vector<std::uint8_t> sf;
};

void sieve_segment(std::uint64_t lo_n, std::uint64_t hi_n,
                   std::span<const std::uint64_t> base_primes, SegmentScratch& scratch,
                   FactorSignTable& out, bool include_omega) {
    const std::uint64_t len = hi_n - lo_n + 1;
    std::uint32_t* rem = scratch.rem.data();
    std::uint8_t* sf = scratch.sf.data();
    std::uint8_t* om = include_omega ? out.mutable_omega_bytes().data() + (lo_n - out.start())
                                     : scratch.omega_local.data();

    for (std::uint64_t i = 0; i < len; ++i) rem[i] = static_cast<std::uint32_t>(lo_n + i);
    std::memset(sf, 1, len);
    if (!include_omega) std::memset(om, 0, len);

    for (std::uint64_t p : base_primes) {
        // One pass per prime power p^k ≤ hi: every multiple gains one Ω and
        // sheds one factor p; the p² pass also clears the square-free flag.
        std::uint64_t pk = p;
        unsigned k = 1;
        for (; pk <= hi_n; pk *= p, ++k) {
            std::uint64_t first = (lo_n + pk - 1) / pk * pk;
            if (k == 2) {
                for (std::uint64_t m = first; m <= hi_n; m += pk) {
                    std::uint64_t i = m - lo_n;
                    ++om[i];
                    rem[i] /= static_cast<std::uint32_t>(p);
                    sf[i] = 0;
                }
            } else {
                for (std::uint64_t m = first; m <= hi_n; m += pk) {
                    std::uint64_t i = m - lo_n;
                    ++om[i];
                    rem[i] /= static_cast<std::uint32_t>(p);
                }
            }
        }
    }

    // A cofactor > 1 is a single prime factor above √limit.
    for (std::uint64_t i = 0; i < len; ++i)
        if (rem[i] > 1) ++om[i];

    if (lo_n == 1) {
        // n = 1: empty factorization, no prime marks it.
        om[0] = 0;
        sf[0] = 1;
    }

    // Pack parity and square-free bytes into the output bit arrays. The
    // segment is word-aligned, so the words touched here belong to it alone.
    bits::Word* sign_words = out.mutable_sign_words().data();
    bits::Word* sf_words = out.mutable_sf_words().data();
    std::uint64_t w = (lo_n - 1) / 64;
    for (std::uint64_t i = 0; i < len; i += 64, ++w) {
        bits::Word sw = 0, qw = 0;
        std::uint64_t block = std::min<std::uint64_t>(64, len - i);
        for (std::uint64_t b = 0; b < block; ++b) {
            sw |= static_cast<bits::Word>(om[i + b] & 1u) << b;
            qw |= static_cast<bits::Word>(sf[i + b]) << b;
        }
        sign_words[w] = sw;
        sf_words[w] = qw;
    }
}

} // namespace

std::uint64_t sieve_memory_estimate(const SieveConfig& config) {
    std::uint64_t count = config.limit;
    std::uint64_t words = bits::word_count(count) + 1;
    std::uint64_t table_bytes = 2 * words * 8 + (config.include_omega ? count : 0);
    std::uint64_t seg = std::min(internal_segment(config.segment_size), count + 63);
    std::uint64_t per_worker = seg * 4 + seg + (config.include_omega ? 0 : seg);
    std::uint64_t sqrt_limit = isqrt_u64(config.limit);
    std::uint64_t prime_bytes = sqrt_limit + sqrt_limit / 4; // sieve mask + prime list
    return table_bytes + resolve_threads(config.threads) * per_worker + prime_bytes;
}

FactorSignTable sieve_range(const SieveConfig& config) {
    if (config.limit == 0)
        throw InvalidArgumentError("invalid range: limit must be >= 1 (limit = 0)");
    if (config.segment_size == 0)
        throw InvalidArgumentError("invalid range: segment_size must be >= 1");
    if (config.limit > 0xFFFFFFFFull)
        throw InvalidArgumentError("limit " + std::to_string(config.limit) +
                                   " exceeds the supported maximum 2^32 - 1");
    std::uint64_t estimate = sieve_memory_estimate(config);
    if (estimate > config.memory_budget_bytes)
        throw ResourceError("sieve needs an estimated " + std::to_string(estimate) +
                            " bytes, over the configured memory budget of " +
                            std::to_string(config.memory_budget_bytes) + " bytes");

    FactorSignTable table(1, config.limit, config.include_omega);
    auto base_primes = primes_up_to(isqrt_u64(config.limit));

    const std::uint64_t seg = internal_segment(config.segment_size);
    const std::uint64_t n_segments = (config.limit + seg - 1) / seg;
    unsigned threads = resolve_threads(config.threads);
    if (threads > n_segments) threads = static_cast<unsigned>(n_segments);

    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        SegmentScratch scratch;
        scratch.rem.resize(std::min(seg, config.limit + 63));
        scratch.sf.resize(scratch.rem.size());
        if (!config.include_omega) scratch.omega_local.resize(scratch.rem.size());
        for (;;) {
            std::uint64_t s = next.fetch_add(1, std::memory_order_relaxed);
            if (s >= n_segments) break;
            std::uint64_t lo = 1 + s * seg;
            std::uint64_t hi = std::min(config.limit, lo + seg - 1);
            sieve_segment(lo, hi, base_primes, scratch, table, config.include_omega);
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return table;
}

NValues factor_oracle(std::uint64_t n) {
    if (n == 0) throw InvalidArgumentError("invalid argument: n must be >= 1 (n = 0)");
    NValues v;
    v.n = n;
    std::uint64_t m = n;
    unsigned omega = 0;
    bool square_free = true;
    auto divide_out = [&](std::uint64_t p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        omega += e;
        if (e >= 2) square_free = false;
    };
    divide_out(2);
    divide_out(3);
    for (std::uint64_t f = 5; f * f <= m; f += 6) {
        divide_out(f);
        divide_out(f + 2);
    }
    if (m > 1) ++omega; // prime cofactor, exponent 1
    v.omega = static_cast<std::uint8_t>(omega);
    v.lambda = (omega % 2 == 0) ? std::int8_t{+1} : std::int8_t{-1};
    v.square_free = square_free;
    return v;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<std::uint8_t> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

} // namespace lmt
