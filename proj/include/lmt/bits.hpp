#pragma once

#include <bit>
#include <cstdint>
#include <span>

namespace lmt::bits {

using Word = std::uint64_t;
inline constexpr unsigned kWordBits = 64;

/// Number of 64-bit words needed to hold `nbits` bits.
constexpr std::uint64_t word_count(std::uint64_t nbits) {
    return (nbits + kWordBits - 1) / kWordBits;
}

/// Mask selecting the low `k` bits, k in [0, 64].
constexpr Word low_mask(unsigned k) {
    return k >= kWordBits ? ~Word{0} : (Word{1} << k) - 1;
}

constexpr bool test(std::span<const Word> words, std::uint64_t i) {
    return (words[i / kWordBits] >> (i % kWordBits)) & 1u;
}

constexpr void set(std::span<Word> words, std::uint64_t i, bool value) {
    Word bit = Word{1} << (i % kWordBits);
    if (value)
        words[i / kWordBits] |= bit;
    else
        words[i / kWordBits] &= ~bit;
}

/// Word of `words` starting at bit offset 64*w + shift, with shift in [0, 63].
/// The caller must guarantee words[w + 1] is readable when shift > 0
/// (tables keep a zero guard word after the payload for this reason).
inline Word shifted_word(const Word* words, std::uint64_t w, unsigned shift) {
    if (shift == 0) return words[w];
    return (words[w] >> shift) | (words[w + 1] << (kWordBits - shift));
}

/// Spread the low 32 bits of `v` to the even bit positions of a 64-bit word.
constexpr Word spread_even(Word v) {
    v &= 0xFFFFFFFFu;
    v = (v | (v << 16)) & 0x0000FFFF0000FFFFull;
    v = (v | (v << 8)) & 0x00FF00FF00FF00FFull;
    v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0Full;
    v = (v | (v << 2)) & 0x3333333333333333ull;
    v = (v | (v << 1)) & 0x5555555555555555ull;
    return v;
}

/// Gather the even bit positions of `v` into the low 32 bits (inverse of
/// spread_even).
constexpr Word gather_even(Word v) {
    v &= 0x5555555555555555ull;
    v = (v | (v >> 1)) & 0x3333333333333333ull;
    v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0Full;
    v = (v | (v >> 4)) & 0x00FF00FF00FF00FFull;
    v = (v | (v >> 8)) & 0x0000FFFF0000FFFFull;
    v = (v | (v >> 16)) & 0x00000000FFFFFFFFull;
    return v;
}

/// Interleave two 32-bit lanes: bit i of `even` lands at position 2i, bit i
/// of `odd` at position 2i+1.
constexpr Word interleave(Word even, Word odd) {
    return spread_even(even) | (spread_even(odd) << 1);
}

/// Walks the bit-index interval [i0, i1) word by word, calling
/// body(word_index, mask) with the mask of in-interval bits.
template <typename Body>
void for_each_masked_word(std::uint64_t i0, std::uint64_t i1, Body&& body) {
    if (i0 >= i1) return;
    std::uint64_t w0 = i0 / kWordBits, w1 = (i1 - 1) / kWordBits;
    if (w0 == w1) {
        body(w0, low_mask(static_cast<unsigned>(i1 - w0 * kWordBits)) &
                     ~low_mask(static_cast<unsigned>(i0 - w0 * kWordBits)));
        return;
    }
    if (i0 % kWordBits) {
        body(w0, ~low_mask(static_cast<unsigned>(i0 - w0 * kWordBits)));
        ++w0;
    }
    for (std::uint64_t w = w0; w < w1; ++w) body(w, ~Word{0});
    body(w1, low_mask(static_cast<unsigned>(i1 - w1 * kWordBits)));
}

} // namespace lmt::bits
