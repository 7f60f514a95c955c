#include "lmt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lmt/errors.hpp"
#include "parallel.hpp"

namespace lmt {

namespace {

class KahanSum {
public:
    void add(double v) {
        double y = v - compensation_;
        double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0;
    double compensation_ = 0;
};

} // namespace

std::vector<CorrelationRecord> sweep(const FactorSignTable& table, std::uint64_t x,
                                     std::uint32_t h_min, std::uint32_t h_max, Mode mode,
                                     unsigned threads) {
    if (h_min == 0) throw InvalidArgumentError("h_min must be >= 1");
    if (h_min > h_max)
        throw InvalidArgumentError("h_min=" + std::to_string(h_min) + " exceeds h_max=" +
                                   std::to_string(h_max));
    if (x == 0) throw InvalidArgumentError("x must be >= 1");
    if (x + h_max > table.count())
        throw RangeError("x=" + std::to_string(x) + " with h_max=" + std::to_string(h_max) +
                         " needs coverage up to " + std::to_string(x + h_max) +
                         ", table covers [1, " + std::to_string(table.count()) + "]");

    const std::uint32_t n = h_max - h_min + 1;
    std::vector<CorrelationRecord> records(n);
    unsigned workers = detail::resolve_threads(threads);
    if (workers > n) workers = n;

    if (workers <= 1) {
        for (std::uint32_t k = 0; k < n; ++k)
            records[k] = correlation(table, x, h_min + k, mode, 1);
    } else {
        // Each worker owns a contiguous block of h values; output order is
        // fixed by h regardless of scheduling.
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::uint32_t per = (n + workers - 1) / workers;
        for (unsigned t = 0; t < workers; ++t) {
            std::uint32_t lo = t * per;
            std::uint32_t hi = std::min(n, lo + per);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi]() {
                for (std::uint32_t k = lo; k < hi; ++k)
                    records[k] = correlation(table, x, h_min + k, mode, 1);
            });
        }
        for (auto& th : pool) th.join();
    }
    return records;
}

SweepSummary summarize(std::span<const CorrelationRecord> records, Mode mode) {
    if (records.size() < 2)
        throw DegenerateStatisticError("insufficient data: need at least 2 records, have " +
                                       std::to_string(records.size()));
    // Canonical order makes the result independent of input permutation.
    std::vector<CorrelationRecord> recs(records.begin(), records.end());
    std::sort(recs.begin(), recs.end(), [](const CorrelationRecord& a, const CorrelationRecord& b) {
        if (a.h != b.h) return a.h < b.h;
        if (a.raw_sum != b.raw_sum) return a.raw_sum < b.raw_sum;
        return a.normalizer < b.normalizer;
    });
    if (recs.front().h == recs.back().h)
        throw DegenerateStatisticError("insufficient data: need at least 2 distinct h values");
    for (const auto& r : recs)
        if (r.x != recs.front().x)
            throw InvalidArgumentError("records mix X=" + std::to_string(recs.front().x) +
                                       " and X=" + std::to_string(r.x));

    const double n = static_cast<double>(recs.size());
    KahanSum sum_h, sum_y;
    for (const auto& r : recs) {
        sum_h.add(static_cast<double>(r.h));
        sum_y.add(r.value());
    }
    const double mean_h = sum_h.value() / n;
    const double mean_y = sum_y.value() / n;

    KahanSum sxx, sxy, syy, sum_abs;
    double max_abs = 0;
    for (const auto& r : recs) {
        double dx = static_cast<double>(r.h) - mean_h;
        double dy = r.value() - mean_y;
        sxx.add(dx * dx);
        sxy.add(dx * dy);
        syy.add(dy * dy);
        sum_abs.add(std::abs(r.value()));
        max_abs = std::max(max_abs, std::abs(r.value()));
    }
    if (syy.value() == 0)
        throw DegenerateStatisticError("degenerate data: zero variance in values, correlation "
                                       "with h is undefined");

    SweepSummary s;
    s.x = recs.front().x;
    s.h_min = recs.front().h;
    s.h_max = recs.back().h;
    s.mode = mode;
    s.mean_abs = sum_abs.value() / n;
    s.max_abs = max_abs;
    s.slope_m = sxy.value() / sxx.value();
    s.intercept_b = mean_y - s.slope_m * mean_h;
    s.pearson_r = sxy.value() / std::sqrt(sxx.value() * syy.value());

    KahanSum ss_res;
    for (const auto& r : recs) {
        double fit = s.slope_m * static_cast<double>(r.h) + s.intercept_b;
        double e = r.value() - fit;
        ss_res.add(e * e);
    }
    s.r_squared = 1.0 - ss_res.value() / syy.value();
    return s;
}

} // namespace lmt
