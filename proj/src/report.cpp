#include "lmt/report.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "lmt/errors.hpp"

namespace lmt {

OutputFormat output_format_from_string(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw InvalidArgumentError("unknown output format '" + std::string(name) +
                               "' (expected csv or json)");
}

std::string format_double(double v) {
    std::array<char, 32> buf;
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

namespace {

using nlohmann::json;

json record_json(const CorrelationRecord& r, Mode mode) {
    return json{{"mode", to_string(mode)},
                {"h", r.h},
                {"x", r.x},
                {"raw_sum", r.raw_sum},
                {"normalizer", r.normalizer},
                {"value", r.value()}};
}

void append_record_csv(std::string& out, const CorrelationRecord& r, Mode mode) {
    out += to_string(mode);
    out += ',';
    out += std::to_string(r.h);
    out += ',';
    out += std::to_string(r.x);
    out += ',';
    out += std::to_string(r.raw_sum);
    out += ',';
    out += std::to_string(r.normalizer);
    out += ',';
    out += format_double(r.value());
    out += '\n';
}

std::string summary_fields(const SweepSummary& s) {
    std::string out;
    out += "mode=";
    out += to_string(s.mode);
    out += ",x=" + std::to_string(s.x);
    out += ",h_min=" + std::to_string(s.h_min);
    out += ",h_max=" + std::to_string(s.h_max);
    out += ",mean_abs=" + format_double(s.mean_abs);
    out += ",max_abs=" + format_double(s.max_abs);
    out += ",slope_m=" + format_double(s.slope_m);
    out += ",intercept_b=" + format_double(s.intercept_b);
    out += ",r_squared=" + format_double(s.r_squared);
    out += ",pearson_r=" + format_double(s.pearson_r);
    return out;
}

json summary_json(const SweepSummary& s) {
    return json{{"mode", to_string(s.mode)},
                {"x", s.x},
                {"h_min", s.h_min},
                {"h_max", s.h_max},
                {"mean_abs", s.mean_abs},
                {"max_abs", s.max_abs},
                {"slope_m", s.slope_m},
                {"intercept_b", s.intercept_b},
                {"r_squared", s.r_squared},
                {"pearson_r", s.pearson_r}};
}

std::string shifts_field(const std::vector<std::int64_t>& shifts) {
    std::string out;
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (i) out += '|';
        out += std::to_string(shifts[i]);
    }
    return out;
}

} // namespace

std::string correlation_csv(std::span<const CorrelationRecord> records, Mode mode) {
    std::string out = "mode,h,x,raw_sum,normalizer,value\n";
    for (const auto& r : records) append_record_csv(out, r, mode);
    return out;
}

std::string correlation_json(std::span<const CorrelationRecord> records, Mode mode) {
    json rows = json::array();
    for (const auto& r : records) rows.push_back(record_json(r, mode));
    return json{{"records", rows}}.dump(2) + "\n";
}

std::string chisq_csv(std::span<const ContingencyTable> tables) {
    std::string out = "mode,h,x,l00,l01,l10,l11,total,q,reject\n";
    for (const auto& ct : tables) {
        ChiSquareResult res = chi_square(ct);
        out += to_string(ct.mode);
        out += ',' + std::to_string(ct.h);
        out += ',' + std::to_string(ct.x);
        out += ',' + std::to_string(ct.counts[0][0]);
        out += ',' + std::to_string(ct.counts[0][1]);
        out += ',' + std::to_string(ct.counts[1][0]);
        out += ',' + std::to_string(ct.counts[1][1]);
        out += ',' + std::to_string(ct.total);
        out += ',' + format_double(res.q);
        out += ',';
        out += res.reject ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string chisq_json(std::span<const ContingencyTable> tables) {
    json rows = json::array();
    for (const auto& ct : tables) {
        ChiSquareResult res = chi_square(ct);
        rows.push_back(json{{"mode", to_string(ct.mode)},
                            {"h", ct.h},
                            {"x", ct.x},
                            {"counts", {{ct.counts[0][0], ct.counts[0][1]},
                                        {ct.counts[1][0], ct.counts[1][1]}}},
                            {"total", ct.total},
                            {"q", res.q},
                            {"reject", res.reject}});
    }
    return json{{"records", rows}}.dump(2) + "\n";
}

std::string sweep_csv(std::span<const CorrelationRecord> records, const SweepSummary& summary) {
    std::string out = correlation_csv(records, summary.mode);
    out += "# summary,";
    out += summary_fields(summary);
    out += '\n';
    return out;
}

std::string sweep_json(std::span<const CorrelationRecord> records, const SweepSummary& summary) {
    json rows = json::array();
    for (const auto& r : records) rows.push_back(record_json(r, summary.mode));
    return json{{"records", rows}, {"summary", summary_json(summary)}}.dump(2) + "\n";
}

std::string analytic_csv(std::span<const AnalyticRow> rows) {
    std::string out = "shifts,truncation_prime,value,tail_bound,x,empirical_pair_density,abs_diff\n";
    for (const auto& row : rows) {
        out += shifts_field(row.shifts);
        out += ',' + std::to_string(row.product.truncation_prime);
        out += ',' + format_double(row.product.value);
        out += ',' + format_double(row.product.tail_bound);
        if (row.has_empirical) {
            out += ',' + std::to_string(row.x);
            out += ',' + format_double(row.empirical);
            out += ',' + format_double(std::abs(row.empirical - row.product.value));
        } else {
            out += ",,,";
        }
        out += '\n';
    }
    return out;
}

std::string analytic_json(std::span<const AnalyticRow> rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        json obj{{"shifts", row.shifts},
                 {"truncation_prime", row.product.truncation_prime},
                 {"value", row.product.value},
                 {"tail_bound", row.product.tail_bound}};
        if (row.has_empirical) {
            obj["x"] = row.x;
            obj["empirical_pair_density"] = row.empirical;
            obj["abs_diff"] = std::abs(row.empirical - row.product.value);
        }
        arr.push_back(obj);
    }
    return json{{"records", arr}}.dump(2) + "\n";
}

} // namespace lmt
