#pragma once

#include <cstdint>
#include <span>

#include "lmt/table.hpp"

namespace lmt {

/// Truncated Euler product with an explicit bound on the omitted log-mass.
struct EulerProductValue {
    double value = 1.0;
    std::uint64_t truncation_prime = 0; ///< largest prime included
    double tail_bound = 0.0;            ///< bound on |log ∏_{p>P} factor|
};

/// u(p): number of distinct residues of `shifts` modulo p².
/// Throws InvalidArgumentError when p is not prime or shifts is empty.
std::uint32_t residue_class_count(std::span<const std::int64_t> shifts, std::uint64_t p);

/// A(h₁,…,h_r) = ∏_{p≤P} (1 − u(p)/p²), the density of n for which every
/// n + hᵢ is square-free. Duplicate shifts are ignored.
EulerProductValue euler_product_A(std::span<const std::int64_t> shifts,
                                  std::uint64_t truncation_prime);

/// ∏_{p≤P} (1 − 1/(p²−1)): the limiting probability that n+h is square-free
/// given that n is, for square-free h ≥ 1. Cross-checked internally against
/// the equivalent form ζ(2)-normalized A({0,h}) within combined tail bounds.
/// Throws InvalidArgumentError when h is not square-free.
double conditional_squarefree_density(std::int64_t h, std::uint64_t truncation_prime);

/// #{n ≤ X : n and n+h both square-free} / X.
double empirical_pair_density(const FactorSignTable& table, std::uint64_t x, std::uint32_t h,
                              unsigned threads = 0);

/// 6/π² = ∏_p (1 − 1/p²), the density of square-free integers.
inline constexpr double kSquareFreeDensity = 0.6079271018540267;

} // namespace lmt
