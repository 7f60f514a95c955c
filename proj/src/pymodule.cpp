#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lmt/analytic.hpp"
#include "lmt/correlation.hpp"
#include "lmt/errors.hpp"
#include "lmt/sieve.hpp"
#include "lmt/stats.hpp"
#include "lmt/table.hpp"
#include "lmt/table_io.hpp"

namespace py = pybind11;
using namespace lmt;

namespace {

ContingencyTable make_contingency(const std::vector<std::vector<std::uint64_t>>& counts,
                                  Mode mode, std::uint32_t h, std::uint64_t x) {
    if (counts.size() != 2 || counts[0].size() != 2 || counts[1].size() != 2)
        throw InvalidArgumentError("counts must be a 2x2 matrix");
    ContingencyTable ct;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ct.counts[i][j] = counts[i][j];
    ct.total = ct.counts[0][0] + ct.counts[0][1] + ct.counts[1][0] + ct.counts[1][1];
    ct.mode = mode;
    ct.h = h;
    ct.x = x ? x : ct.total;
    return ct;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Liouville/Moebius neighboring-value statistics engine";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const RangeError& e) {
            PyErr_SetString(PyExc_IndexError, e.what());
        } catch (const InvalidArgumentError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const DegenerateStatisticError& e) {
            PyErr_SetString(PyExc_ArithmeticError, e.what());
        } catch (const IoError& e) {
            PyErr_SetString(PyExc_OSError, e.what());
        } catch (const ResourceError& e) {
            PyErr_SetString(PyExc_MemoryError, e.what());
        }
    });

    py::enum_<Mode>(m, "Mode")
        .value("lambda_", Mode::lambda)
        .value("moebius", Mode::moebius);
    m.def("mode_from_string", &mode_from_string, py::arg("name"));

    py::class_<NValues>(m, "NValues")
        .def_readonly("n", &NValues::n)
        .def_readonly("omega", &NValues::omega)
        .def_property_readonly("lambda_", [](const NValues& v) { return int(v.lambda); })
        .def_readonly("square_free", &NValues::square_free)
        .def("mu", [](const NValues& v) { return int(v.mu()); })
        .def("__eq__", [](const NValues& a, const NValues& b) { return a == b; })
        .def("__repr__", [](const NValues& v) {
            std::string s = "NValues(n=" + std::to_string(v.n);
            if (v.omega) s += ", omega=" + std::to_string(*v.omega);
            s += ", lambda=" + std::to_string(int(v.lambda));
            s += ", square_free=";
            s += v.square_free ? "True" : "False";
            return s + ")";
        });

    py::class_<FactorSignTable>(m, "FactorSignTable")
        .def_property_readonly("start", &FactorSignTable::start)
        .def_property_readonly("count", &FactorSignTable::count)
        .def_property_readonly("last_n", &FactorSignTable::last_n)
        .def_property_readonly("has_omega", &FactorSignTable::has_omega)
        .def("__len__", &FactorSignTable::count)
        .def("query", &FactorSignTable::query, py::arg("n"))
        .def("lambda_at", [](const FactorSignTable& t, std::uint64_t n) {
            return int(t.lambda_at(n));
        }, py::arg("n"))
        .def("mu_at", [](const FactorSignTable& t, std::uint64_t n) { return int(t.mu_at(n)); },
             py::arg("n"))
        .def("square_free_at", &FactorSignTable::square_free_at, py::arg("n"))
        .def("__eq__", [](const FactorSignTable& a, const FactorSignTable& b) { return a == b; });

    m.def(
        "sieve_range",
        [](std::uint64_t limit, std::uint64_t segment_size, bool include_omega, unsigned threads,
           std::uint64_t memory_budget_bytes) {
            SieveConfig config;
            config.limit = limit;
            config.segment_size = segment_size;
            config.include_omega = include_omega;
            config.threads = threads;
            config.memory_budget_bytes = memory_budget_bytes;
            return sieve_range(config);
        },
        py::arg("limit"), py::arg("segment_size") = (1u << 22),
        py::arg("include_omega") = false, py::arg("threads") = 0,
        py::arg("memory_budget_bytes") = (2ull << 30),
        "Sieve lambda/square-free (optionally omega) data for n in [1, limit].");
    m.def("factor_oracle", &factor_oracle, py::arg("n"),
          "Trial-division reference for a single n.");

    m.def("save_file", &save_file, py::arg("table"), py::arg("path"),
          "Write a table to a .lmt file; returns the byte count.");
    m.def("load_file", &load_file, py::arg("path"), "Load a table from a .lmt file.");
    m.def("file_size_for", &file_size_for, py::arg("count"), py::arg("with_omega"));

    py::class_<CorrelationRecord>(m, "CorrelationRecord")
        .def(py::init([](std::uint32_t h, std::uint64_t x, std::int64_t raw_sum,
                         std::uint64_t normalizer) {
                 CorrelationRecord r;
                 r.h = h;
                 r.x = x;
                 r.raw_sum = raw_sum;
                 r.normalizer = normalizer;
                 return r;
             }),
             py::arg("h"), py::arg("x"), py::arg("raw_sum"), py::arg("normalizer"))
        .def_readonly("h", &CorrelationRecord::h)
        .def_readonly("x", &CorrelationRecord::x)
        .def_readonly("raw_sum", &CorrelationRecord::raw_sum)
        .def_readonly("normalizer", &CorrelationRecord::normalizer)
        .def_property_readonly("value", &CorrelationRecord::value)
        .def("__repr__", [](const CorrelationRecord& r) {
            return "CorrelationRecord(h=" + std::to_string(r.h) + ", x=" + std::to_string(r.x) +
                   ", raw_sum=" + std::to_string(r.raw_sum) +
                   ", normalizer=" + std::to_string(r.normalizer) + ")";
        });

    py::class_<ContingencyTable>(m, "ContingencyTable")
        .def(py::init(&make_contingency), py::arg("counts"), py::arg("mode") = Mode::lambda,
             py::arg("h") = 1, py::arg("x") = 0)
        .def_property_readonly("counts",
                               [](const ContingencyTable& ct) {
                                   return std::vector<std::vector<std::uint64_t>>{
                                       {ct.counts[0][0], ct.counts[0][1]},
                                       {ct.counts[1][0], ct.counts[1][1]}};
                               })
        .def_readonly("total", &ContingencyTable::total)
        .def_readonly("mode", &ContingencyTable::mode)
        .def_readonly("h", &ContingencyTable::h)
        .def_readonly("x", &ContingencyTable::x)
        .def("row_marginal", &ContingencyTable::row_marginal, py::arg("i"))
        .def("col_marginal", &ContingencyTable::col_marginal, py::arg("j"))
        .def("signed_agreement", &ContingencyTable::signed_agreement);

    py::class_<ConditionalExpectations>(m, "ConditionalExpectations")
        .def_readonly("e_plus", &ConditionalExpectations::e_plus)
        .def_readonly("e_minus", &ConditionalExpectations::e_minus)
        .def_readonly("l0", &ConditionalExpectations::l0)
        .def_readonly("l1", &ConditionalExpectations::l1);

    py::class_<ChiSquareResult>(m, "ChiSquareResult")
        .def_readonly("q", &ChiSquareResult::q)
        .def_readonly("reject", &ChiSquareResult::reject);

    m.attr("CHI_SQUARE_REJECT_95") = kChiSquareReject95;
    m.attr("SQRT_DECADE_RATE") = kSqrtDecadeRate;
    m.attr("SQUARE_FREE_DENSITY") = kSquareFreeDensity;

    m.def("summatory", &summatory, py::arg("table"), py::arg("x"), py::arg("mode"),
          py::arg("threads") = 0);
    m.def("correlation", &correlation, py::arg("table"), py::arg("x"), py::arg("h"),
          py::arg("mode"), py::arg("threads") = 0);
    m.def("contingency", &contingency, py::arg("table"), py::arg("x"), py::arg("h"),
          py::arg("mode"), py::arg("threads") = 0);
    m.def(
        "contingency_series",
        [](const FactorSignTable& t, const std::vector<std::uint64_t>& xs, std::uint32_t h,
           Mode mode, unsigned threads) { return contingency_series(t, xs, h, mode, threads); },
        py::arg("table"), py::arg("x_checkpoints"), py::arg("h"), py::arg("mode"),
        py::arg("threads") = 0);
    m.def(
        "summatory_series",
        [](const FactorSignTable& t, const std::vector<std::uint64_t>& xs, Mode mode,
           unsigned threads) { return summatory_series(t, xs, mode, threads); },
        py::arg("table"), py::arg("x_checkpoints"), py::arg("mode"), py::arg("threads") = 0);
    m.def(
        "correlation_series",
        [](const FactorSignTable& t, const std::vector<std::uint64_t>& xs, std::uint32_t h,
           Mode mode, unsigned threads) { return correlation_series(t, xs, h, mode, threads); },
        py::arg("table"), py::arg("x_checkpoints"), py::arg("h"), py::arg("mode"),
        py::arg("threads") = 0);
    m.def("conditional_expectations", &conditional_expectations, py::arg("contingency_table"));
    m.def("conditional_identity_residual", &conditional_identity_residual,
          py::arg("contingency_table"));
    m.def("chi_square", &chi_square, py::arg("contingency_table"));
    m.def(
        "decade_decay_ratios",
        [](const std::vector<std::pair<std::uint64_t, double>>& values) {
            return decade_decay_ratios(values);
        },
        py::arg("values"));

    py::class_<EulerProductValue>(m, "EulerProductValue")
        .def_readonly("value", &EulerProductValue::value)
        .def_readonly("truncation_prime", &EulerProductValue::truncation_prime)
        .def_readonly("tail_bound", &EulerProductValue::tail_bound);

    m.def(
        "residue_class_count",
        [](const std::vector<std::int64_t>& shifts, std::uint64_t p) {
            return residue_class_count(shifts, p);
        },
        py::arg("shifts"), py::arg("p"));
    m.def(
        "euler_product_A",
        [](const std::vector<std::int64_t>& shifts, std::uint64_t truncation_prime) {
            return euler_product_A(shifts, truncation_prime);
        },
        py::arg("shifts"), py::arg("truncation_prime") = 1000000);
    m.def("conditional_squarefree_density", &conditional_squarefree_density, py::arg("h"),
          py::arg("truncation_prime") = 1000000);
    m.def("empirical_pair_density", &empirical_pair_density, py::arg("table"), py::arg("x"),
          py::arg("h"), py::arg("threads") = 0);

    py::class_<SweepSummary>(m, "SweepSummary")
        .def_readonly("x", &SweepSummary::x)
        .def_readonly("h_min", &SweepSummary::h_min)
        .def_readonly("h_max", &SweepSummary::h_max)
        .def_readonly("mean_abs", &SweepSummary::mean_abs)
        .def_readonly("max_abs", &SweepSummary::max_abs)
        .def_readonly("slope_m", &SweepSummary::slope_m)
        .def_readonly("intercept_b", &SweepSummary::intercept_b)
        .def_readonly("r_squared", &SweepSummary::r_squared)
        .def_readonly("pearson_r", &SweepSummary::pearson_r)
        .def_readonly("mode", &SweepSummary::mode);

    m.def("sweep", &sweep, py::arg("table"), py::arg("x"), py::arg("h_min"), py::arg("h_max"),
          py::arg("mode"), py::arg("threads") = 0);
    m.def(
        "summarize",
        [](const std::vector<CorrelationRecord>& records, Mode mode) {
            return summarize(records, mode);
        },
        py::arg("records"), py::arg("mode"));

    m.attr("__version__") = "0.1.0";
}
