#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lmt/analytic.hpp"
#include "lmt/correlation.hpp"
#include "lmt/errors.hpp"
#include "lmt/report.hpp"
#include "lmt/sieve.hpp"
#include "lmt/stats.hpp"
#include "lmt/table_io.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path == "-") {
        std::cout << content;
        if (!std::cout) throw lmt::IoError("failed writing to stdout");
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw lmt::IoError("cannot open '" + out_path + "' for writing");
    out << content;
    out.close();
    if (!out) throw lmt::IoError("error writing '" + out_path + "'");
}

std::vector<std::int64_t> parse_shifts(const std::string& text) {
    std::vector<std::int64_t> shifts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            shifts.push_back(std::stoll(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw lmt::InvalidArgumentError("--shifts: '" + item + "' is not an integer");
        }
    }
    if (shifts.empty()) throw lmt::InvalidArgumentError("--shifts must name at least one integer");
    return shifts;
}

// Default X columns; entries that would scan past the table are dropped.
std::vector<std::uint64_t> resolve_checkpoints(std::vector<std::uint64_t> xs,
                                               const lmt::FactorSignTable& table,
                                               std::uint32_t max_h) {
    if (xs.empty()) {
        for (std::uint64_t x : {10000ull, 100000ull, 1000000ull, 10000000ull, 100000000ull})
            if (x + max_h <= table.count()) xs.push_back(x);
        if (xs.empty())
            throw lmt::RangeError("table covers [1, " + std::to_string(table.count()) +
                                  "], too small for the default X checkpoints with h up to " +
                                  std::to_string(max_h));
        return xs;
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    // Validate the full plan before any scan starts.
    if (xs.back() + max_h > table.count())
        throw lmt::RangeError("--x " + std::to_string(xs.back()) + " with h up to " +
                              std::to_string(max_h) + " needs coverage " +
                              std::to_string(xs.back() + max_h) + ", table covers [1, " +
                              std::to_string(table.count()) + "]");
    return xs;
}

struct CommonIo {
    std::string table_path;
    std::string out_path = "-";
    std::string format = "csv";
    unsigned threads = 0;
};

void add_io_options(CLI::App* cmd, CommonIo& io, bool needs_table = true) {
    if (needs_table)
        cmd->add_option("--table", io.table_path, ".lmt table file")
            ->required()
            ->check(CLI::ExistingFile);
    cmd->add_option("--out", io.out_path, "output file, or - for stdout")
        ->capture_default_str();
    cmd->add_option("--format", io.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", io.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
}

int run_verify(const lmt::FactorSignTable& table, const std::string& table_path,
               std::uint64_t n_max) {
    using namespace lmt;
    bool all_ok = true;
    auto report = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "ok: " : "FAIL: ") << what << "\n";
        if (!ok) all_ok = false;
    };

    std::uint64_t upto = std::min(n_max, table.count());
    bool oracle_ok = true;
    for (std::uint64_t n = 1; n <= upto; ++n) {
        NValues expect = factor_oracle(n);
        NValues got = table.query(n);
        if (got.lambda != expect.lambda || got.square_free != expect.square_free ||
            (got.omega && *got.omega != *expect.omega)) {
            oracle_ok = false;
            report(false, "trial-division mismatch at n=" + std::to_string(n));
            break;
        }
    }
    if (oracle_ok)
        report(true, "trial-division equivalence for n in [1, " + std::to_string(upto) + "]");

    std::uint64_t actual_size = std::filesystem::file_size(table_path);
    report(actual_size == file_size_for(table.count(), table.has_omega()),
           "file size matches 32 + ceil(count/4) + omega bytes");

    std::stringstream buffer;
    save(table, buffer);
    FactorSignTable reloaded = load(buffer);
    report(reloaded == table, "save/load round-trip is bit-exact");

    bool identity_ok = true, residual_ok = true;
    for (std::uint32_t h : {1u, 2u, 3u, 5u, 10u}) {
        if (h >= table.count()) break;
        std::uint64_t x = std::min(upto, table.count() - h);
        for (Mode mode : {Mode::lambda, Mode::moebius}) {
            ContingencyTable ct = contingency(table, x, h, mode);
            CorrelationRecord rec = correlation(table, x, h, mode);
            if (ct.signed_agreement() != rec.raw_sum ||
                ct.total != rec.normalizer)
                identity_ok = false;
            if (ct.row_marginal(0) > 0 && ct.row_marginal(1) > 0 &&
                !(conditional_identity_residual(ct) < 1e-12))
                residual_ok = false;
        }
    }
    report(identity_ok, "correlation equals contingency decomposition exactly");
    report(residual_ok, "conditional expectation decomposition residual < 1e-12");

    std::cout << (all_ok ? "verify: pass" : "verify: FAIL") << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Liouville/Moebius neighboring-value statistics"};
    // --h is a documented option name, so help gets no -h short form.
    app.set_help_flag("--help", "print this help message and exit");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "build a .lmt table with a segmented sieve");
    lmt::SieveConfig sieve_config;
    std::string sieve_out;
    sieve_cmd->add_option("--limit", sieve_config.limit, "inclusive upper bound N")->required();
    sieve_cmd->add_option("--segment-size", sieve_config.segment_size, "values per segment")
        ->capture_default_str();
    sieve_cmd->add_flag("--include-omega", sieve_config.include_omega,
                        "materialize the omega byte channel");
    sieve_cmd->add_option("--threads", sieve_config.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    sieve_cmd->add_option("--memory-budget", sieve_config.memory_budget_bytes,
                          "allocation budget in bytes")
        ->capture_default_str();
    sieve_cmd->add_option("--out", sieve_out, "output .lmt path")->required();
    sieve_cmd->callback([&]() {
        lmt::FactorSignTable table = lmt::sieve_range(sieve_config);
        std::uint64_t bytes = lmt::save_file(table, sieve_out);
        std::cout << "wrote " << sieve_out << ": range=[1," << table.count()
                  << "] omega=" << (table.has_omega() ? "yes" : "no") << " bytes=" << bytes
                  << "\n";
    });

    // correlate
    auto* corr_cmd = app.add_subcommand("correlate", "shifted correlation sums C(h, X)");
    CommonIo corr_io;
    std::vector<std::uint32_t> corr_h;
    std::vector<std::uint64_t> corr_x;
    std::string corr_mode = "lambda";
    bool corr_summatory = false;
    add_io_options(corr_cmd, corr_io);
    auto* corr_h_opt =
        corr_cmd->add_option("--h", corr_h, "shift(s) h >= 1; repeatable");
    corr_cmd->add_option("--x", corr_x, "X checkpoint(s); default 1e4..1e8 clipped to coverage");
    corr_cmd->add_option("--mode", corr_mode, "lambda or moebius")
        ->check(CLI::IsMember({"lambda", "moebius"}))
        ->capture_default_str();
    corr_cmd->add_flag("--summatory", corr_summatory, "sum f(n) itself instead of f(n)f(n+h)")
        ->excludes(corr_h_opt);
    corr_cmd->callback([&]() {
        lmt::FactorSignTable table = lmt::load_file(corr_io.table_path);
        lmt::Mode mode = lmt::mode_from_string(corr_mode);
        std::vector<lmt::CorrelationRecord> records;
        if (corr_summatory) {
            auto xs = resolve_checkpoints(corr_x, table, 0);
            records = lmt::summatory_series(table, xs, mode, corr_io.threads);
        } else {
            if (corr_h.empty())
                throw lmt::InvalidArgumentError("--h is required unless --summatory is given");
            std::uint32_t max_h = *std::max_element(corr_h.begin(), corr_h.end());
            auto xs = resolve_checkpoints(corr_x, table, max_h);
            for (std::uint32_t h : corr_h) {
                auto part = lmt::correlation_series(table, xs, h, mode, corr_io.threads);
                records.insert(records.end(), part.begin(), part.end());
            }
        }
        write_output(corr_io.out_path,
                     corr_io.format == "csv" ? lmt::correlation_csv(records, mode)
                                             : lmt::correlation_json(records, mode));
    });

    // chisq
    auto* chisq_cmd =
        app.add_subcommand("chisq", "contingency tables and the chi-square statistic Q");
    CommonIo chisq_io;
    std::vector<std::uint32_t> chisq_h;
    std::vector<std::uint64_t> chisq_x;
    std::string chisq_mode = "lambda";
    add_io_options(chisq_cmd, chisq_io);
    chisq_cmd->add_option("--h", chisq_h, "shift(s) h >= 1; repeatable")->required();
    chisq_cmd->add_option("--x", chisq_x, "X checkpoint(s); default 1e4..1e8 clipped to coverage");
    chisq_cmd->add_option("--mode", chisq_mode, "lambda or moebius")
        ->check(CLI::IsMember({"lambda", "moebius"}))
        ->capture_default_str();
    chisq_cmd->callback([&]() {
        lmt::FactorSignTable table = lmt::load_file(chisq_io.table_path);
        lmt::Mode mode = lmt::mode_from_string(chisq_mode);
        std::uint32_t max_h = *std::max_element(chisq_h.begin(), chisq_h.end());
        auto xs = resolve_checkpoints(chisq_x, table, max_h);
        std::vector<lmt::ContingencyTable> tables;
        for (std::uint32_t h : chisq_h) {
            auto part = lmt::contingency_series(table, xs, h, mode, chisq_io.threads);
            tables.insert(tables.end(), part.begin(), part.end());
        }
        write_output(chisq_io.out_path, chisq_io.format == "csv" ? lmt::chisq_csv(tables)
                                                                 : lmt::chisq_json(tables));
    });

    // sweep
    auto* sweep_cmd =
        app.add_subcommand("sweep", "per-h correlation records plus regression summary");
    CommonIo sweep_io;
    std::uint64_t sweep_x = 0;
    std::uint32_t sweep_h_min = 1, sweep_h_max = 1000;
    std::string sweep_mode = "lambda";
    add_io_options(sweep_cmd, sweep_io);
    sweep_cmd->add_option("--x", sweep_x, "X value")->required();
    sweep_cmd->add_option("--h-min", sweep_h_min, "first shift")->capture_default_str();
    sweep_cmd->add_option("--h-max", sweep_h_max, "last shift")->capture_default_str();
    sweep_cmd->add_option("--mode", sweep_mode, "lambda or moebius")
        ->check(CLI::IsMember({"lambda", "moebius"}))
        ->capture_default_str();
    sweep_cmd->callback([&]() {
        lmt::FactorSignTable table = lmt::load_file(sweep_io.table_path);
        lmt::Mode mode = lmt::mode_from_string(sweep_mode);
        auto records = lmt::sweep(table, sweep_x, sweep_h_min, sweep_h_max, mode,
                                  sweep_io.threads);
        lmt::SweepSummary summary = lmt::summarize(records, mode);
        write_output(sweep_io.out_path, sweep_io.format == "csv"
                                            ? lmt::sweep_csv(records, summary)
                                            : lmt::sweep_json(records, summary));
    });

    // analytic
    auto* analytic_cmd =
        app.add_subcommand("analytic", "Euler product A(h1,...,hr) with tail bound");
    CommonIo analytic_io;
    std::string analytic_shifts = "0,1";
    std::uint64_t analytic_p = 1000000;
    std::uint64_t analytic_x = 0;
    add_io_options(analytic_cmd, analytic_io, /*needs_table=*/false);
    auto* analytic_table_opt =
        analytic_cmd->add_option("--table", analytic_io.table_path,
                                 ".lmt table for the empirical comparison")
            ->check(CLI::ExistingFile);
    analytic_cmd->add_option("--shifts", analytic_shifts, "comma-separated shift list")
        ->capture_default_str();
    analytic_cmd->add_option("--truncation-prime", analytic_p, "largest prime in the product")
        ->capture_default_str();
    analytic_cmd->add_option("--x", analytic_x, "X for the empirical pair density")
        ->needs(analytic_table_opt);
    analytic_table_opt->needs(analytic_cmd->get_option("--x"));
    analytic_cmd->callback([&]() {
        auto shifts = parse_shifts(analytic_shifts);
        lmt::AnalyticRow row;
        row.shifts = shifts;
        row.product = lmt::euler_product_A(shifts, analytic_p);
        if (!analytic_io.table_path.empty()) {
            std::vector<std::int64_t> sorted(shifts);
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            if (sorted.size() != 2 || sorted[0] != 0 || sorted[1] < 1)
                throw lmt::InvalidArgumentError(
                    "--table comparison requires --shifts of the form 0,h with h >= 1");
            lmt::FactorSignTable table = lmt::load_file(analytic_io.table_path);
            row.has_empirical = true;
            row.x = analytic_x;
            row.empirical = lmt::empirical_pair_density(
                table, analytic_x, static_cast<std::uint32_t>(sorted[1]), analytic_io.threads);
        }
        std::vector<lmt::AnalyticRow> rows{row};
        write_output(analytic_io.out_path, analytic_io.format == "csv"
                                               ? lmt::analytic_csv(rows)
                                               : lmt::analytic_json(rows));
    });

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "oracle-equivalence and identity checks on a table");
    std::string verify_table;
    std::uint64_t verify_n_max = 10000;
    verify_cmd->add_option("--table", verify_table, ".lmt table file")
        ->required()
        ->check(CLI::ExistingFile);
    verify_cmd->add_option("--n-max", verify_n_max, "upper bound for the oracle check")
        ->capture_default_str();
    int verify_status = 0;
    verify_cmd->callback([&]() {
        lmt::FactorSignTable table = lmt::load_file(verify_table);
        verify_status = run_verify(table, verify_table, verify_n_max);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors
    } catch (const lmt::RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const lmt::DegenerateStatisticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const lmt::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lmt::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const lmt::InvalidArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lmt::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return verify_status;
}
