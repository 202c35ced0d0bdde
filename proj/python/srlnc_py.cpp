#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "srlnc/analysis.hpp"
#include "srlnc/codec.hpp"
#include "srlnc/matrix.hpp"
#include "srlnc/oracle.hpp"

namespace py = pybind11;
using namespace srlnc;

namespace {

std::vector<std::string> coeff_strings(const RationalPoly& p) {
    std::vector<std::string> out;
    for (const auto& c : p.coeffs()) out.push_back(c.get_str());
    return out;
}

py::tuple fn_tuple(const RationalFn& f) {
    return py::make_tuple(coeff_strings(f.num()), coeff_strings(f.den()), to_string(f));
}

AnalysisOptions options(std::uint64_t budget, unsigned threads) {
    AnalysisOptions opts;
    opts.budget = budget;
    opts.threads = threads;
    return opts;
}

FqMatrix to_matrix(const FieldSpec& f, const std::vector<std::vector<Symbol>>& rows) {
    if (rows.empty()) throw DimensionError("empty matrix");
    std::vector<Symbol> entries;
    for (const auto& r : rows) {
        if (r.size() != rows[0].size()) throw DimensionError("ragged rows");
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return FqMatrix(f, rows.size(), rows[0].size(), entries);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact full-rank probabilities of sparse random matrices over finite fields";

    auto& base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<BudgetExceededError>(m, "BudgetExceededError", base.ptr());
    py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());

    m.def(
        "full_rank_prob",
        [](std::size_t rows, std::size_t cols, std::uint32_t q, std::uint64_t budget, unsigned threads) {
            return fn_tuple(full_rank_prob(rows, cols, FieldSpec(q), options(budget, threads)).expr);
        },
        py::arg("m"), py::arg("n"), py::arg("q") = 2, py::arg("budget") = kDefaultEnumerationBudget,
        py::arg("threads") = 1);
    m.def(
        "full_rank_prob_at",
        [](std::size_t rows, std::size_t cols, std::uint32_t q, const std::string& p0, std::uint64_t budget) {
            return full_rank_prob_at(rows, cols, FieldSpec(q), parse_rational(p0), options(budget, 1)).get_str();
        },
        py::arg("m"), py::arg("n"), py::arg("q") = 2, py::arg("p0") = "1/2",
        py::arg("budget") = kDefaultEnumerationBudget);
    m.def(
        "p_in",
        [](std::size_t i, std::size_t n, std::uint32_t q, std::uint64_t budget) {
            return fn_tuple(p_in(i, n, FieldSpec(q), options(budget, 1)).expr);
        },
        py::arg("i"), py::arg("n"), py::arg("q") = 2, py::arg("budget") = kDefaultEnumerationBudget);
    m.def(
        "rank_distribution",
        [](std::size_t rows, std::size_t cols, std::uint32_t q, const std::string& p0, const std::string& form) {
            const FieldSpec f(q);
            const Rational x = parse_rational(p0);
            const auto dist = form == "pf" ? rank_dist_partial_fraction(rows, cols, f, x) : rank_dist_nested_at(rows, cols, f, x);
            std::vector<std::string> out;
            for (const auto& p : dist.probs) out.push_back(p.get_str());
            return out;
        },
        py::arg("m"), py::arg("n"), py::arg("q") = 2, py::arg("p0") = "1/2", py::arg("form") = "nested");
    m.def("bkw_bound",
          [](std::size_t i, std::size_t n, std::uint32_t q, const std::string& p0) {
              return BkwBound(i, n, q).at(parse_rational(p0)).get_str();
          },
          py::arg("i"), py::arg("n"), py::arg("q") = 2, py::arg("p0") = "1/2");
    m.def(
        "oracle_census",
        [](std::size_t rows, std::size_t cols, std::uint32_t q, std::uint64_t budget) {
            return oracle_full_rank_poly(rows, cols, FieldSpec(q), budget).by_weight;
        },
        py::arg("m"), py::arg("n"), py::arg("q") = 2, py::arg("budget") = kDefaultOracleBudget);

    m.def("rank", [](std::uint32_t q, const std::vector<std::vector<Symbol>>& rows) {
        return rank(to_matrix(FieldSpec(q), rows));
    });
    m.def("in_row_space",
          [](std::uint32_t q, const std::vector<std::vector<Symbol>>& rows, const std::vector<Symbol>& h) {
              return membership_criterion(column_basis_decompose(to_matrix(FieldSpec(q), rows)), h);
          });

    m.def("field_mul", [](std::uint32_t q, Symbol a, Symbol b) { return FieldSpec(q).mul(a, b); });
    m.def("field_inv", [](std::uint32_t q, Symbol a) { return FieldSpec(q).inv(a); });

    m.def(
        "simulate",
        [](const std::string& config_json) {
            const SimConfig cfg = sim_config_from_json(nlohmann::json::parse(config_json));
            cfg.validate();
            SimReport report;
            {
                py::gil_scoped_release release;
                report = run_trials(cfg);
            }
            return to_json(report).dump();
        },
        py::arg("config_json"));
}
