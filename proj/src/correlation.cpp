#include "lmt/correlation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lmt/errors.hpp"
#include "parallel.hpp"

namespace lmt {

using bits::Word;

std::string_view to_string(Mode mode) {
    return mode == Mode::lambda ? "lambda" : "moebius";
}

Mode mode_from_string(std::string_view name) {
    if (name == "lambda") return Mode::lambda;
    if (name == "moebius") return Mode::moebius;
    throw InvalidArgumentError("unknown mode '" + std::string(name) +
                               "' (expected lambda or moebius)");
}

std::int64_t ContingencyTable::signed_agreement() const {
    return static_cast<std::int64_t>(counts[0][0] + counts[1][1]) -
           static_cast<std::int64_t>(counts[0][1] + counts[1][0]);
}

namespace {

void require_start_one(const FactorSignTable& table) {
    if (table.start() != 1)
        throw InvalidArgumentError("table must start at n=1 (starts at n=" +
                                   std::to_string(table.start()) + ")");
}

void require_prefix(const FactorSignTable& table, std::uint64_t x, std::uint32_t h) {
    if (x == 0) throw InvalidArgumentError("x must be >= 1");
    if (x + h > table.count())
        throw RangeError("x=" + std::to_string(x) + " with h=" + std::to_string(h) +
                         " needs coverage up to " + std::to_string(x + h) +
                         ", table covers [1, " + std::to_string(table.count()) + "]");
}

// Counts over the bit-index interval [i0, i1). Bit i of the sign array set
// means λ(i+1) = −1; bit i of the square-free array set means i+1 is
// square-free. The partner of index i sits at i + h.

struct PrefixCounts {
    std::uint64_t lam_neg = 0; // λ(n) = −1
    std::uint64_t sf = 0;      // n square-free
    std::uint64_t mu_neg = 0;  // n square-free with λ(n) = −1
    PrefixCounts& operator+=(const PrefixCounts& o) {
        lam_neg += o.lam_neg;
        sf += o.sf;
        mu_neg += o.mu_neg;
        return *this;
    }
};

struct PairDiffCounts {
    std::uint64_t lam_diff = 0; // λ(n) ≠ λ(n+h)
    std::uint64_t sf_both = 0;  // n and n+h square-free
    std::uint64_t mu_diff = 0;  // both square-free, λ(n) ≠ λ(n+h)
    PairDiffCounts& operator+=(const PairDiffCounts& o) {
        lam_diff += o.lam_diff;
        sf_both += o.sf_both;
        mu_diff += o.mu_diff;
        return *this;
    }
};

struct PairJointCounts {
    std::uint64_t lam_neg_n = 0;    // λ(n) = −1
    std::uint64_t lam_neg_nh = 0;   // λ(n+h) = −1
    std::uint64_t lam_neg_both = 0; // both −1
    std::uint64_t sf_both = 0;      // n, n+h square-free
    std::uint64_t mu_neg_n = 0;     // restricted to sf_both
    std::uint64_t mu_neg_nh = 0;
    std::uint64_t mu_neg_both = 0;
    PairJointCounts& operator+=(const PairJointCounts& o) {
        lam_neg_n += o.lam_neg_n;
        lam_neg_nh += o.lam_neg_nh;
        lam_neg_both += o.lam_neg_both;
        sf_both += o.sf_both;
        mu_neg_n += o.mu_neg_n;
        mu_neg_nh += o.mu_neg_nh;
        mu_neg_both += o.mu_neg_both;
        return *this;
    }
};

PrefixCounts scan_prefix(const Word* S, const Word* Q, std::uint64_t i0, std::uint64_t i1) {
    PrefixCounts c;
    bits::for_each_masked_word(i0, i1, [&](std::uint64_t w, Word mask) {
        Word s = S[w] & mask, q = Q[w] & mask;
        c.lam_neg += std::popcount(s);
        c.sf += std::popcount(q);
        c.mu_neg += std::popcount(s & q);
    });
    return c;
}

PairDiffCounts scan_pair_diff(const Word* S, const Word* Q, std::uint64_t i0, std::uint64_t i1,
                              std::uint32_t h) {
    PairDiffCounts c;
    const std::uint64_t hq = h / 64;
    const unsigned hr = h % 64;
    bits::for_each_masked_word(i0, i1, [&](std::uint64_t w, Word mask) {
        Word s = S[w];
        Word sh = bits::shifted_word(S, w + hq, hr);
        Word qq = Q[w] & bits::shifted_word(Q, w + hq, hr) & mask;
        c.lam_diff += std::popcount((s ^ sh) & mask);
        c.sf_both += std::popcount(qq);
        c.mu_diff += std::popcount((s ^ sh) & qq);
    });
    return c;
}

PairJointCounts scan_pair_joint(const Word* S, const Word* Q, std::uint64_t i0, std::uint64_t i1,
                                std::uint32_t h) {
    PairJointCounts c;
    const std::uint64_t hq = h / 64;
    const unsigned hr = h % 64;
    bits::for_each_masked_word(i0, i1, [&](std::uint64_t w, Word mask) {
        Word s = S[w] & mask;
        Word sh = bits::shifted_word(S, w + hq, hr) & mask;
        Word qq = Q[w] & bits::shifted_word(Q, w + hq, hr) & mask;
        c.lam_neg_n += std::popcount(s);
        c.lam_neg_nh += std::popcount(sh);
        c.lam_neg_both += std::popcount(s & sh);
        c.sf_both += std::popcount(qq);
        c.mu_neg_n += std::popcount(s & qq);
        c.mu_neg_nh += std::popcount(sh & qq);
        c.mu_neg_both += std::popcount(s & sh & qq);
    });
    return c;
}

ContingencyTable table_from_joint(const PairJointCounts& c, std::uint64_t x, std::uint32_t h,
                                  Mode mode) {
    ContingencyTable ct;
    ct.mode = mode;
    ct.h = h;
    ct.x = x;
    std::uint64_t total, neg_n, neg_nh, neg_both;
    if (mode == Mode::lambda) {
        total = x;
        neg_n = c.lam_neg_n;
        neg_nh = c.lam_neg_nh;
        neg_both = c.lam_neg_both;
    } else {
        total = c.sf_both;
        if (total == 0)
            throw DegenerateStatisticError("degenerate normalizer: no n <= " +
                                           std::to_string(x) + " with n and n+" +
                                           std::to_string(h) + " both square-free");
        neg_n = c.mu_neg_n;
        neg_nh = c.mu_neg_nh;
        neg_both = c.mu_neg_both;
    }
    ct.total = total;
    ct.counts[1][1] = neg_both;
    ct.counts[1][0] = neg_n - neg_both;
    ct.counts[0][1] = neg_nh - neg_both;
    ct.counts[0][0] = total - neg_n - (neg_nh - neg_both);
    return ct;
}

void validate_checkpoints(const FactorSignTable& table, std::span<const std::uint64_t> xs,
                          std::uint32_t h) {
    if (xs.empty()) throw InvalidArgumentError("at least one X checkpoint is required");
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (xs[k] == 0) throw InvalidArgumentError("x must be >= 1");
        if (k > 0 && xs[k] <= xs[k - 1])
            throw InvalidArgumentError("X checkpoints must be strictly increasing");
    }
    require_prefix(table, xs.back(), h);
}

} // namespace

CorrelationRecord summatory(const FactorSignTable& table, std::uint64_t x, Mode mode,
                            unsigned threads) {
    std::uint64_t xs[] = {x};
    return summatory_series(table, xs, mode, threads)[0];
}

std::vector<CorrelationRecord> summatory_series(const FactorSignTable& table,
                                                std::span<const std::uint64_t> x_checkpoints,
                                                Mode mode, unsigned threads) {
    require_start_one(table);
    validate_checkpoints(table, x_checkpoints, 0);
    const Word* S = table.sign_data();
    const Word* Q = table.sf_data();

    std::vector<CorrelationRecord> out;
    out.reserve(x_checkpoints.size());
    PrefixCounts acc;
    std::uint64_t prev = 0;
    for (std::uint64_t x : x_checkpoints) {
        acc += detail::chunked_scan<PrefixCounts>(
            prev, x, threads, [&](std::uint64_t a, std::uint64_t b) {
                return scan_prefix(S, Q, a, b);
            });
        prev = x;
        CorrelationRecord rec;
        rec.h = 0;
        rec.x = x;
        if (mode == Mode::lambda) {
            rec.normalizer = x;
            rec.raw_sum = static_cast<std::int64_t>(x) - 2 * static_cast<std::int64_t>(acc.lam_neg);
        } else {
            rec.normalizer = acc.sf; // Y₁ ≥ 1 since n = 1 is square-free
            rec.raw_sum =
                static_cast<std::int64_t>(acc.sf) - 2 * static_cast<std::int64_t>(acc.mu_neg);
        }
        out.push_back(rec);
    }
    return out;
}

CorrelationRecord correlation(const FactorSignTable& table, std::uint64_t x, std::uint32_t h,
                              Mode mode, unsigned threads) {
    std::uint64_t xs[] = {x};
    return correlation_series(table, xs, h, mode, threads)[0];
}

std::vector<CorrelationRecord> correlation_series(const FactorSignTable& table,
                                                  std::span<const std::uint64_t> x_checkpoints,
                                                  std::uint32_t h, Mode mode, unsigned threads) {
    require_start_one(table);
    if (h == 0) throw InvalidArgumentError("h must be >= 1");
    validate_checkpoints(table, x_checkpoints, h);
    const Word* S = table.sign_data();
    const Word* Q = table.sf_data();

    std::vector<CorrelationRecord> out;
    out.reserve(x_checkpoints.size());
    PairDiffCounts acc;
    std::uint64_t prev = 0;
    for (std::uint64_t x : x_checkpoints) {
        acc += detail::chunked_scan<PairDiffCounts>(
            prev, x, threads,
            [&](std::uint64_t a, std::uint64_t b) { return scan_pair_diff(S, Q, a, b, h); });
        prev = x;
        CorrelationRecord rec;
        rec.h = h;
        rec.x = x;
        if (mode == Mode::lambda) {
            rec.normalizer = x;
            rec.raw_sum =
                static_cast<std::int64_t>(x) - 2 * static_cast<std::int64_t>(acc.lam_diff);
        } else {
            if (acc.sf_both == 0)
                throw DegenerateStatisticError("degenerate normalizer: no n <= " +
                                               std::to_string(x) + " with n and n+" +
                                               std::to_string(h) + " both square-free");
            rec.normalizer = acc.sf_both;
            rec.raw_sum = static_cast<std::int64_t>(acc.sf_both) -
                          2 * static_cast<std::int64_t>(acc.mu_diff);
        }
        out.push_back(rec);
    }
    return out;
}

ContingencyTable contingency(const FactorSignTable& table, std::uint64_t x, std::uint32_t h,
                             Mode mode, unsigned threads) {
    std::uint64_t xs[] = {x};
    return contingency_series(table, xs, h, mode, threads)[0];
}

std::vector<ContingencyTable> contingency_series(const FactorSignTable& table,
                                                 std::span<const std::uint64_t> x_checkpoints,
                                                 std::uint32_t h, Mode mode, unsigned threads) {
    require_start_one(table);
    if (h == 0) throw InvalidArgumentError("h must be >= 1");
    validate_checkpoints(table, x_checkpoints, h);
    const Word* S = table.sign_data();
    const Word* Q = table.sf_data();

    std::vector<ContingencyTable> out;
    out.reserve(x_checkpoints.size());
    PairJointCounts acc;
    std::uint64_t prev = 0;
    for (std::uint64_t x : x_checkpoints) {
        acc += detail::chunked_scan<PairJointCounts>(
            prev, x, threads,
            [&](std::uint64_t a, std::uint64_t b) { return scan_pair_joint(S, Q, a, b, h); });
        prev = x;
        out.push_back(table_from_joint(acc, x, h, mode));
    }
    return out;
}

ConditionalExpectations conditional_expectations(const ContingencyTable& ct) {
    std::uint64_t l0 = ct.row_marginal(0), l1 = ct.row_marginal(1);
    if (l0 == 0 || l1 == 0)
        throw DegenerateStatisticError("degenerate marginal: row counts L0=" + std::to_string(l0) +
                                       ", L1=" + std::to_string(l1) + " must both be positive");
    ConditionalExpectations ce;
    ce.l0 = l0;
    ce.l1 = l1;
    ce.e_plus = static_cast<double>(static_cast<std::int64_t>(ct.counts[0][0]) -
                                    static_cast<std::int64_t>(ct.counts[0][1])) /
                static_cast<double>(l0);
    ce.e_minus = static_cast<double>(static_cast<std::int64_t>(ct.counts[1][0]) -
                                     static_cast<std::int64_t>(ct.counts[1][1])) /
                 static_cast<double>(l1);
    double residual = conditional_identity_residual(ct);
    if (!(residual < 1e-9))
        throw std::logic_error("conditional expectation decomposition residual " +
                               std::to_string(residual));
    return ce;
}

double conditional_identity_residual(const ContingencyTable& ct) {
    double l0 = static_cast<double>(ct.row_marginal(0));
    double l1 = static_cast<double>(ct.row_marginal(1));
    double t = static_cast<double>(ct.total);
    double d0 = static_cast<double>(static_cast<std::int64_t>(ct.counts[0][0]) -
                                    static_cast<std::int64_t>(ct.counts[0][1]));
    double d1 = static_cast<double>(static_cast<std::int64_t>(ct.counts[1][0]) -
                                    static_cast<std::int64_t>(ct.counts[1][1]));
    double lhs = d0 / l0 - d1 / l1;
    double rhs = (static_cast<double>(ct.signed_agreement()) / t) * (t / l0) +
                 (d1 / t) * (t / l0 - t / l1);
    return std::abs(lhs - rhs);
}

ChiSquareResult chi_square(const ContingencyTable& ct) {
    std::uint64_t r[2] = {ct.row_marginal(0), ct.row_marginal(1)};
    std::uint64_t c[2] = {ct.col_marginal(0), ct.col_marginal(1)};
    if (r[0] == 0 || r[1] == 0 || c[0] == 0 || c[1] == 0)
        throw DegenerateStatisticError(
            "degenerate marginal: all row and column marginals must be positive (rows " +
            std::to_string(r[0]) + "," + std::to_string(r[1]) + "; cols " + std::to_string(c[0]) +
            "," + std::to_string(c[1]) + ")");
    long double total = static_cast<long double>(ct.total);
    long double q = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            long double expected =
                static_cast<long double>(r[i]) * static_cast<long double>(c[j]) / total;
            long double diff = static_cast<long double>(ct.counts[i][j]) - expected;
            q += diff * diff / expected;
        }
    ChiSquareResult res;
    res.q = static_cast<double>(q);
    res.reject = res.q > kChiSquareReject95;
    return res;
}

std::vector<double> decade_decay_ratios(
    std::span<const std::pair<std::uint64_t, double>> values) {
    if (values.size() < 2)
        throw InvalidArgumentError("need at least two (X, value) pairs for decay ratios");
    auto is_power_of_ten = [](std::uint64_t x) {
        if (x == 0) return false;
        while (x % 10 == 0) x /= 10;
        return x == 1;
    };
    if (!is_power_of_ten(values.front().first))
        throw InvalidArgumentError("X values must be powers of ten (got " +
                                   std::to_string(values.front().first) + ")");
    std::vector<double> ratios;
    ratios.reserve(values.size() - 1);
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        if (values[k + 1].first != 10 * values[k].first)
            throw InvalidArgumentError("X values must be consecutive powers of ten (" +
                                       std::to_string(values[k].first) + " followed by " +
                                       std::to_string(values[k + 1].first) + ")");
        if (values[k].second == 0 || values[k + 1].second == 0)
            throw DegenerateStatisticError("undefined ratio: zero value at X=" +
                                           std::to_string(values[k].second == 0
                                                              ? values[k].first
                                                              : values[k + 1].first));
        ratios.push_back(values[k].second / values[k + 1].second);
    }
    return ratios;
}

} // namespace lmt
