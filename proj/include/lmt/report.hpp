#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lmt/analytic.hpp"
#include "lmt/correlation.hpp"
#include "lmt/stats.hpp"

namespace lmt {

enum class OutputFormat { csv, json };

OutputFormat output_format_from_string(std::string_view name);

/// Shortest representation of `v` that round-trips to the same double.
std::string format_double(double v);

// Deterministic report bodies shared by the CLI and the tests. Reals use
// shortest round-trip formatting; integers are bare.

/// Header "mode,h,x,raw_sum,normalizer,value" + one row per record.
std::string correlation_csv(std::span<const CorrelationRecord> records, Mode mode);
std::string correlation_json(std::span<const CorrelationRecord> records, Mode mode);

/// Header "mode,h,x,l00,l01,l10,l11,total,q,reject" + one row per table.
std::string chisq_csv(std::span<const ContingencyTable> tables);
std::string chisq_json(std::span<const ContingencyTable> tables);

/// Correlation rows followed by a "# summary,..." trailer line.
std::string sweep_csv(std::span<const CorrelationRecord> records, const SweepSummary& summary);
std::string sweep_json(std::span<const CorrelationRecord> records, const SweepSummary& summary);

/// One row per analytic evaluation; empirical columns are blank unless a
/// table was supplied.
struct AnalyticRow {
    std::vector<std::int64_t> shifts;
    EulerProductValue product;
    bool has_empirical = false;
    std::uint64_t x = 0;
    double empirical = 0;
};
std::string analytic_csv(std::span<const AnalyticRow> rows);
std::string analytic_json(std::span<const AnalyticRow> rows);

} // namespace lmt
