#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lmt/table.hpp"

namespace lmt {

/// Which function pair a statistic is computed over: λ(n) with λ(n+h) over
/// all n ≤ X, or μ(n) with μ(n+h) restricted to n with both n and n+h
/// square-free.
enum class Mode { lambda, moebius };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name);

/// One (h, X) cell: the exact integer sum and its normalizer.
/// h = 0 denotes a summatory (single-function) sum.
struct CorrelationRecord {
    std::uint32_t h = 0;
    std::uint64_t x = 0;
    std::int64_t raw_sum = 0;        ///< exact integer sum
    std::uint64_t normalizer = 1;    ///< X, Y₁, or Y₂
    double value() const { return static_cast<double>(raw_sum) / static_cast<double>(normalizer); }

    friend bool operator==(const CorrelationRecord&, const CorrelationRecord&) = default;
};

/// 2×2 joint sign counts. counts[i][j] is the number of admissible n ≤ X
/// with sign index i at n and j at n + h, where index 0 means value +1 and
/// index 1 means value −1. total is X in λ-mode and Y₂ in μ-mode.
struct ContingencyTable {
    std::uint64_t counts[2][2] = {{0, 0}, {0, 0}};
    std::uint64_t total = 0;
    Mode mode = Mode::lambda;
    std::uint32_t h = 0;
    std::uint64_t x = 0;

    std::uint64_t row_marginal(int i) const { return counts[i][0] + counts[i][1]; }
    std::uint64_t col_marginal(int j) const { return counts[0][j] + counts[1][j]; }
    /// (L₀₀ + L₁₁ − L₀₁ − L₁₀), the exact numerator of the correlation value.
    std::int64_t signed_agreement() const;
};

struct ConditionalExpectations {
    double e_plus = 0;  ///< E[f(n+h) | f(n) = +1]
    double e_minus = 0; ///< E[f(n+h) | f(n) = −1]
    std::uint64_t l0 = 0; ///< count of n with f(n) = +1
    std::uint64_t l1 = 0; ///< count of n with f(n) = −1
};

struct ChiSquareResult {
    double q = 0;
    bool reject = false; ///< q > 3.84146 (95% threshold, 1 degree of freedom)
};

inline constexpr double kChiSquareReject95 = 3.84146;
inline constexpr double kSqrtDecadeRate = 3.1622776601683795; ///< 10^(1/2)

/// Σ_{n≤X} λ(n) normalized by X, or Σ_{n≤X} μ(n) normalized by
/// Y₁ = #{n ≤ X square-free}.
CorrelationRecord summatory(const FactorSignTable& table, std::uint64_t x, Mode mode,
                            unsigned threads = 0);

/// C = (1/X) Σ_{n≤X} λ(n)λ(n+h), or D = (1/Y₂) Σ μ(n)μ(n+h) over the n ≤ X
/// with n and n+h both square-free. Requires x + h ≤ coverage.
CorrelationRecord correlation(const FactorSignTable& table, std::uint64_t x, std::uint32_t h,
                              Mode mode, unsigned threads = 0);

/// Joint sign counts for (f(n), f(n+h)) over n ≤ X.
ContingencyTable contingency(const FactorSignTable& table, std::uint64_t x, std::uint32_t h,
                             Mode mode, unsigned threads = 0);

/// One streaming pass producing the contingency tables for several X values
/// (ascending) at a fixed h.
std::vector<ContingencyTable> contingency_series(const FactorSignTable& table,
                                                 std::span<const std::uint64_t> x_checkpoints,
                                                 std::uint32_t h, Mode mode,
                                                 unsigned threads = 0);

/// Summatory records for several X values in one pass.
std::vector<CorrelationRecord> summatory_series(const FactorSignTable& table,
                                                std::span<const std::uint64_t> x_checkpoints,
                                                Mode mode, unsigned threads = 0);

/// Correlation records for several X values (ascending) at a fixed h in one
/// pass.
std::vector<CorrelationRecord> correlation_series(const FactorSignTable& table,
                                                  std::span<const std::uint64_t> x_checkpoints,
                                                  std::uint32_t h, Mode mode,
                                                  unsigned threads = 0);

/// e₊ = (L₀₀−L₀₁)/L₀ and e₋ = (L₁₀−L₁₁)/L₁. Both row marginals must be
/// positive. The exact decomposition
///   e₊ − e₋ = [(L₀₀+L₁₁−L₀₁−L₁₀)/T]·(T/L₀) + [(L₁₀−L₁₁)/T]·(T/L₀ − T/L₁)
/// is re-evaluated internally and must hold to floating round-off.
ConditionalExpectations conditional_expectations(const ContingencyTable& ct);

/// Residual of the decomposition above (exposed for tests).
double conditional_identity_residual(const ContingencyTable& ct);

/// Q = ΣΣ (L_ij − Ê_ij)²/Ê_ij with Ê_ij = L_{i+}L_{+j}/total, 1 degree of
/// freedom. All four marginals must be positive.
ChiSquareResult chi_square(const ContingencyTable& ct);

/// Ratios value(X)/value(10X) for consecutive decades; the square-root
/// benchmark for these ratios is kSqrtDecadeRate. X values must be
/// consecutive powers of ten and every value nonzero.
std::vector<double> decade_decay_ratios(std::span<const std::pair<std::uint64_t, double>> values);

} // namespace lmt
