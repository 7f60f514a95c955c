#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lmt/bits.hpp"

namespace lmt {

/// Multiplicative data for a single integer n.
struct NValues {
    std::uint64_t n = 0;
    std::optional<std::uint8_t> omega; ///< Ω(n), prime factors with multiplicity (if materialized)
    std::int8_t lambda = +1;           ///< λ(n) = (−1)^Ω(n), in {+1, −1}
    bool square_free = true;           ///< μ²(n) = 1

    /// μ(n): λ(n) for square-free n, 0 otherwise. Derived, never stored.
    std::int8_t mu() const { return square_free ? lambda : std::int8_t{0}; }

    friend bool operator==(const NValues&, const NValues&) = default;
};

/// Per-n record table over the contiguous range [start, start + count).
///
/// In memory the two 2-bit record channels are kept as separate bit arrays
/// (one bit per n each): sign_words bit i set means λ(start+i) = −1,
/// sf_words bit i set means start+i is square-free. Both arrays carry one
/// zero guard word past the payload so shifted word reads never go out of
/// bounds, and all bits past `count` in the last payload word are zero.
/// The Ω channel, when present, is one byte per n.
class FactorSignTable {
public:
    FactorSignTable() = default;

    /// Allocates a zeroed table covering [start, start + count).
    FactorSignTable(std::uint64_t start, std::uint64_t count, bool with_omega);

    std::uint64_t start() const { return start_; }
    std::uint64_t count() const { return count_; }
    /// Largest covered n, i.e. start + count − 1.
    std::uint64_t last_n() const { return start_ + count_ - 1; }
    bool has_omega() const { return !omega_.empty(); }

    bool covers(std::uint64_t n) const { return n >= start_ && n - start_ < count_; }

    /// O(1) decode of the record for n. Throws RangeError outside coverage.
    NValues query(std::uint64_t n) const;

    std::int8_t lambda_at(std::uint64_t n) const;
    bool square_free_at(std::uint64_t n) const;
    std::int8_t mu_at(std::uint64_t n) const;

    std::span<const bits::Word> sign_words() const { return {sign_.data(), word_count()}; }
    std::span<const bits::Word> sf_words() const { return {sf_.data(), word_count()}; }
    std::span<const std::uint8_t> omega_bytes() const { return omega_; }

    std::span<bits::Word> mutable_sign_words() { return {sign_.data(), word_count()}; }
    std::span<bits::Word> mutable_sf_words() { return {sf_.data(), word_count()}; }
    std::span<std::uint8_t> mutable_omega_bytes() { return omega_; }

    /// Raw storage including the guard word (used by the scan kernels).
    const bits::Word* sign_data() const { return sign_.data(); }
    const bits::Word* sf_data() const { return sf_.data(); }

    std::uint64_t word_count() const { return bits::word_count(count_); }

    /// Checks structural invariants: count ≥ 1, trailing/guard bits zero,
    /// λ sign consistent with Ω parity when the Ω channel is present.
    /// Throws InvalidArgumentError on violation.
    void validate() const;

    friend bool operator==(const FactorSignTable& a, const FactorSignTable& b);

private:
    void check_range(std::uint64_t n) const;

    std::uint64_t start_ = 1;
    std::uint64_t count_ = 0;
    std::vector<bits::Word> sign_; ///< word_count() + 1 entries (guard)
    std::vector<bits::Word> sf_;   ///< word_count() + 1 entries (guard)
    std::vector<std::uint8_t> omega_;
};

} // namespace lmt
