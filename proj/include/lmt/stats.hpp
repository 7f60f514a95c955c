#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lmt/correlation.hpp"

namespace lmt {

/// Aggregate statistics of an h-sweep of correlation values at fixed X.
struct SweepSummary {
    std::uint64_t x = 0;
    std::uint32_t h_min = 0;
    std::uint32_t h_max = 0;
    double mean_abs = 0;
    double max_abs = 0;
    double slope_m = 0;     ///< OLS slope of value against h
    double intercept_b = 0; ///< OLS intercept
    double r_squared = 0;   ///< 1 − SS_res/SS_tot
    double pearson_r = 0;   ///< sample correlation of (h, value)
    Mode mode = Mode::lambda;
};

/// One CorrelationRecord per h in [h_min, h_max], in order.
/// Requires h_min ≥ 1 and x + h_max ≤ coverage.
std::vector<CorrelationRecord> sweep(const FactorSignTable& table, std::uint64_t x,
                                     std::uint32_t h_min, std::uint32_t h_max, Mode mode,
                                     unsigned threads = 0);

/// mean/max of |value| plus an ordinary least-squares fit of value against h
/// (compensated summation throughout). Requires at least two distinct h and
/// nonzero variance in the values; records must share one X. `mode` only
/// labels the summary.
SweepSummary summarize(std::span<const CorrelationRecord> records, Mode mode);

} // namespace lmt
