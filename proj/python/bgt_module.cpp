#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "bgt/bench.hpp"
#include "bgt/generators.hpp"
#include "bgt/io.hpp"
#include "bgt/m2_oracle.hpp"
#include "bgt/rf_oracle.hpp"
#include "bgt/rm_oracle.hpp"
#include "bgt/sim.hpp"

namespace py = pybind11;
using namespace bgt;

namespace {

// Rates cross the boundary as strings ("1/3") or ints.
Instance to_instance(const std::vector<std::string>& rates) {
    std::vector<Rational> r;
    r.reserve(rates.size());
    for (const auto& s : rates) r.push_back(Rational::parse(s));
    return Instance::canonicalize(r);
}

std::vector<std::string> to_strings(const std::vector<Rational>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(r.str());
    return out;
}

Strategy to_strategy(const std::string& id, const std::optional<std::string>& x) {
    return parse_strategy(id, x ? std::optional<Rational>(Rational::parse(*x)) : std::nullopt);
}

std::size_t index_of(TrimDecision d) { return d.index; }

}  // namespace

PYBIND11_MODULE(_bgt, m) {
    m.doc() = "Bamboo garden trimming schedulers";

    m.def("canonicalize", [](const std::vector<std::string>& rates) { return to_strings(to_instance(rates).rates()); },
          "Rates sorted nonincreasing, as strings.");
    m.def(
        "generate",
        [](const std::string& spec, std::size_t n, std::uint64_t seed) {
            return to_strings(generate_rates(parse_generator(spec), n, seed));
        },
        py::arg("spec"), py::arg("n") = 10, py::arg("seed") = 1);
    m.def(
        "simulate",
        [](const std::vector<std::string>& rates, const std::string& strategy, std::int64_t horizon,
           std::optional<std::string> x, bool trace) {
            Instance in = to_instance(rates);
            return report_to_json(simulate(to_strategy(strategy, x), in, SimulateOptions{horizon, trace, {}}), in).dump();
        },
        py::arg("rates"), py::arg("strategy"), py::arg("horizon"), py::arg("x") = py::none(), py::arg("trace") = false,
        "Report as a JSON string.");
    m.def(
        "verify",
        [](const std::vector<std::string>& rates, const std::string& strategy, std::optional<std::int64_t> horizon,
           std::optional<std::string> x) {
            Instance in = to_instance(rates);
            Strategy s = to_strategy(strategy, x);
            return report_to_json(verify(in, s, horizon.value_or(default_horizon(s, in))), in).dump();
        },
        py::arg("rates"), py::arg("strategy"), py::arg("horizon") = py::none(), py::arg("x") = py::none());
    m.def(
        "equivalence",
        [](const std::vector<std::string>& rates, std::int64_t horizon, const std::string& x) {
            return equivalence_to_json(equivalence_check(to_instance(rates), horizon, Rational::parse(x))).dump();
        },
        py::arg("rates"), py::arg("horizon"), py::arg("x") = "1");
    m.def(
        "bench",
        [](const std::string& structure, std::vector<std::size_t> sizes, std::uint64_t seed) {
            if (sizes.empty()) sizes = bench_default_sizes(structure);
            return bench_csv(bench(structure, sizes, seed));
        },
        py::arg("structure"), py::arg("sizes") = std::vector<std::size_t>{}, py::arg("seed") = 1);
    m.def("rf_bound", [](const std::string& x) { return rf_bound(Rational::parse(x)).str(); });

    py::class_<RFOracle>(m, "ReduceFastestOracle")
        .def(py::init([](const std::vector<std::string>& rates, const std::string& x) {
                 return RFOracle(to_instance(rates), Rational::parse(x));
             }),
             py::arg("rates"), py::arg("x") = "1809/1250")
        .def("query", [](RFOracle& o) { return index_of(o.query()); }, "Canonical index to trim, 0 for nothing.")
        .def_property_readonly("work", &RFOracle::work);
    py::class_<RMOracle>(m, "ReduceMaxOracle")
        .def(py::init([](const std::vector<std::string>& rates) { return RMOracle(to_instance(rates)); }))
        .def("query", [](RMOracle& o) { return index_of(o.query()); })
        .def_property_readonly("work", &RMOracle::work);
    py::class_<MakespanTwoOracle>(m, "MakespanTwoOracle")
        .def(py::init([](const std::vector<std::string>& rates) { return MakespanTwoOracle(to_instance(rates)); }))
        .def("query", [](MakespanTwoOracle& o) { return index_of(o.query()); })
        .def("tree", [](const MakespanTwoOracle& o) { return tree_to_json(o.tree()).dump(); })
        .def_property_readonly("work", &MakespanTwoOracle::work);

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::invalid_argument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const std::out_of_range& e) {
            PyErr_SetString(PyExc_IndexError, e.what());
        }
    });
}
