#include "lmt/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmt/errors.hpp"
#include "lmt/sieve.hpp"
#include "parallel.hpp"

namespace lmt {

namespace {

bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    if (p % 3 == 0) return p == 3;
    for (std::uint64_t f = 5; f * f <= p; f += 6)
        if (p % f == 0 || p % (f + 2) == 0) return false;
    return true;
}

std::vector<std::int64_t> distinct_shifts(std::span<const std::int64_t> shifts) {
    if (shifts.empty()) throw InvalidArgumentError("shifts must be non-empty");
    std::vector<std::int64_t> s(shifts.begin(), shifts.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::uint32_t residue_count_unchecked(std::span<const std::int64_t> sorted_shifts,
                                      std::uint64_t p) {
    std::int64_t m = static_cast<std::int64_t>(p * p);
    std::vector<std::int64_t> residues;
    residues.reserve(sorted_shifts.size());
    for (std::int64_t h : sorted_shifts) {
        std::int64_t r = h % m;
        if (r < 0) r += m;
        residues.push_back(r);
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    return static_cast<std::uint32_t>(residues.size());
}

} // namespace

std::uint32_t residue_class_count(std::span<const std::int64_t> shifts, std::uint64_t p) {
    if (!is_prime_u64(p))
        throw InvalidArgumentError("p=" + std::to_string(p) + " is not prime");
    if (p > 3037000499ull) // p² must fit in int64
        throw InvalidArgumentError("p=" + std::to_string(p) + " too large for residue counting");
    auto s = distinct_shifts(shifts);
    return residue_count_unchecked(s, p);
}

EulerProductValue euler_product_A(std::span<const std::int64_t> shifts,
                                  std::uint64_t truncation_prime) {
    if (truncation_prime < 2)
        throw InvalidArgumentError("truncation_prime must be >= 2 (got " +
                                   std::to_string(truncation_prime) + ")");
    auto s = distinct_shifts(shifts);
    const std::uint32_t r = static_cast<std::uint32_t>(s.size());
    // Residues h mod p² collide only when p² divides a pairwise difference,
    // so u(p) = r for every p with p² beyond the largest difference.
    const std::uint64_t max_diff = static_cast<std::uint64_t>(s.back() - s.front());

    auto primes = primes_up_to(truncation_prime);
    const bool log_space = r > 4; // direct products stay well away from 0 for small r
    double product = 1.0;
    double log_sum = 0.0;
    for (std::uint64_t p : primes) {
        double p2 = static_cast<double>(p) * static_cast<double>(p);
        std::uint32_t u = r;
        if (p * p <= max_diff) u = residue_count_unchecked(s, p);
        double ratio = static_cast<double>(u) / p2;
        if (ratio >= 1.0)
            throw InvalidArgumentError("non-positive Euler factor at p=" + std::to_string(p) +
                                       " (u=" + std::to_string(u) + ")");
        if (log_space)
            log_sum += std::log1p(-ratio);
        else
            product *= 1.0 - ratio;
    }

    EulerProductValue out;
    out.value = log_space ? std::exp(log_sum) : product;
    out.truncation_prime = primes.back();
    // Omitted log mass: for p > P >= 2r, -log(1 - u/p²) <= u/(p² - u)
    // <= r/(p² - r), and r <= P/2 <= p²/2 gives p² - r >= p²/2, so the tail
    // is at most Σ_{n>P} 2r/n² <= 2r/P.
    if (truncation_prime >= 2ull * r)
        out.tail_bound = 2.0 * static_cast<double>(r) / static_cast<double>(truncation_prime);
    else
        out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
}

double conditional_squarefree_density(std::int64_t h, std::uint64_t truncation_prime) {
    if (h < 1)
        throw InvalidArgumentError("h must be >= 1 (got " + std::to_string(h) + ")");
    if (truncation_prime < 2)
        throw InvalidArgumentError("truncation_prime must be >= 2");
    if (!factor_oracle(static_cast<std::uint64_t>(h)).square_free)
        throw InvalidArgumentError("unsupported input: h=" + std::to_string(h) +
                                   " is not square-free; use euler_product_A for general h");

    auto primes = primes_up_to(truncation_prime);
    double value = 1.0;
    for (std::uint64_t p : primes) {
        double p2 = static_cast<double>(p) * static_cast<double>(p);
        value *= 1.0 - 1.0 / (p2 - 1.0);
    }

    // Same quantity as ζ(2)-normalizing the pair density: each factor obeys
    // p²/(p²−1) · (1 − 2/p²) = 1 − 1/(p²−1). Cross-check against
    // (π²/6)·A({0,h}); the two differ by the ζ(2) factors beyond the
    // truncation, at most Σ_{p>P} 1/(p²−1) <= 2/P in log mass.
    std::int64_t pair[] = {0, h};
    EulerProductValue a = euler_product_A(pair, truncation_prime);
    double alt = (std::numbers::pi * std::numbers::pi / 6.0) * a.value;
    double tolerance = value * (2.0 / static_cast<double>(truncation_prime)) + 1e-12;
    if (!(std::abs(alt - value) <= tolerance))
        throw std::logic_error("conditional square-free density cross-check failed: " +
                               std::to_string(value) + " vs " + std::to_string(alt));
    return value;
}

double empirical_pair_density(const FactorSignTable& table, std::uint64_t x, std::uint32_t h,
                              unsigned threads) {
    if (table.start() != 1)
        throw InvalidArgumentError("table must start at n=1 (starts at n=" +
                                   std::to_string(table.start()) + ")");
    if (h == 0) throw InvalidArgumentError("h must be >= 1");
    if (x == 0) throw InvalidArgumentError("x must be >= 1");
    if (x + h > table.count())
        throw RangeError("x=" + std::to_string(x) + " with h=" + std::to_string(h) +
                         " needs coverage up to " + std::to_string(x + h) + ", table covers [1, " +
                         std::to_string(table.count()) + "]");
    const bits::Word* Q = table.sf_data();
    const std::uint64_t hq = h / 64;
    const unsigned hr = h % 64;
    struct Count {
        std::uint64_t pairs = 0;
        Count& operator+=(const Count& o) {
            pairs += o.pairs;
            return *this;
        }
    };
    Count c = detail::chunked_scan<Count>(0, x, threads, [&](std::uint64_t a, std::uint64_t b) {
        Count part;
        bits::for_each_masked_word(a, b, [&](std::uint64_t w, bits::Word mask) {
            part.pairs += std::popcount(Q[w] & bits::shifted_word(Q, w + hq, hr) & mask);
        });
        return part;
    });
    return static_cast<double>(c.pairs) / static_cast<double>(x);
}

} // namespace lmt
