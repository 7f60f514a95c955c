#pragma once

// Test-only reference implementations. Everything here is deliberately
// independent of the engine's bit-parallel scan kernels: counts go through
// factor_oracle one n at a time, and products go factor by factor with
// explicit residue counting.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "lmt/bits.hpp"
#include "lmt/correlation.hpp"
#include "lmt/sieve.hpp"
#include "lmt/table.hpp"

namespace oracles {

inline std::int64_t summatory_raw(std::uint64_t x, lmt::Mode mode, std::uint64_t* normalizer) {
    std::int64_t sum = 0;
    std::uint64_t norm = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        lmt::NValues v = lmt::factor_oracle(n);
        if (mode == lmt::Mode::lambda) {
            sum += v.lambda;
            ++norm;
        } else {
            sum += v.mu();
            if (v.square_free) ++norm;
        }
    }
    if (normalizer) *normalizer = norm;
    return sum;
}

inline lmt::ContingencyTable contingency(std::uint64_t x, std::uint32_t h, lmt::Mode mode) {
    lmt::ContingencyTable ct;
    ct.mode = mode;
    ct.h = h;
    ct.x = x;
    for (std::uint64_t n = 1; n <= x; ++n) {
        lmt::NValues a = lmt::factor_oracle(n);
        lmt::NValues b = lmt::factor_oracle(n + h);
        if (mode == lmt::Mode::moebius && !(a.square_free && b.square_free)) continue;
        int i = (mode == lmt::Mode::lambda ? a.lambda : a.mu()) < 0 ? 1 : 0;
        int j = (mode == lmt::Mode::lambda ? b.lambda : b.mu()) < 0 ? 1 : 0;
        ++ct.counts[i][j];
        ++ct.total;
    }
    return ct;
}

inline std::int64_t correlation_raw(std::uint64_t x, std::uint32_t h, lmt::Mode mode,
                                    std::uint64_t* normalizer) {
    std::int64_t sum = 0;
    std::uint64_t norm = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        lmt::NValues a = lmt::factor_oracle(n);
        lmt::NValues b = lmt::factor_oracle(n + h);
        if (mode == lmt::Mode::lambda) {
            sum += a.lambda * b.lambda;
            ++norm;
        } else {
            if (!(a.square_free && b.square_free)) continue;
            sum += a.mu() * b.mu();
            ++norm;
        }
    }
    if (normalizer) *normalizer = norm;
    return sum;
}

/// Truncated product ∏_{p≤P}(1 − u(p)/p²) with u(p) counted explicitly for
/// every prime and plain left-to-right multiplication.
inline double euler_product_direct(const std::vector<std::int64_t>& shifts, std::uint64_t P) {
    double product = 1.0;
    for (std::uint64_t p : lmt::primes_up_to(P)) {
        std::int64_t m = static_cast<std::int64_t>(p * p);
        std::set<std::int64_t> residues;
        for (std::int64_t h : shifts) residues.insert(((h % m) + m) % m);
        product *= 1.0 - static_cast<double>(residues.size()) /
                             (static_cast<double>(p) * static_cast<double>(p));
    }
    return product;
}

/// Arbitrary valid table: random sign/square-free bits, or random Ω bytes
/// with the sign derived from the parity.
inline lmt::FactorSignTable random_table(std::mt19937_64& rng, std::uint64_t count,
                                         bool with_omega) {
    lmt::FactorSignTable t(1, count, with_omega);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_int_distribution<int> omega_dist(0, 20);
    for (std::uint64_t i = 0; i < count; ++i) {
        bool negative;
        if (with_omega) {
            std::uint8_t omega = static_cast<std::uint8_t>(omega_dist(rng));
            t.mutable_omega_bytes()[i] = omega;
            negative = omega % 2 == 1;
        } else {
            negative = bit(rng) == 1;
        }
        lmt::bits::set(t.mutable_sign_words(), i, negative);
        lmt::bits::set(t.mutable_sf_words(), i, bit(rng) == 1);
    }
    return t;
}

/// Random 2×2 contingency table with all cells positive.
inline lmt::ContingencyTable random_contingency(std::mt19937_64& rng, std::uint64_t max_cell) {
    std::uniform_int_distribution<std::uint64_t> cell(1, max_cell);
    lmt::ContingencyTable ct;
    ct.total = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ct.counts[i][j] = cell(rng);
            ct.total += ct.counts[i][j];
        }
    ct.mode = lmt::Mode::lambda;
    ct.h = 1;
    ct.x = ct.total;
    return ct;
}

} // namespace oracles
