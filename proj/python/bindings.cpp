// Python bindings for the main operations: instance I/O, validation, the
// exact oracle, D2, obstruction scanning, solving and the generators.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matchaug/errors.hpp"
#include "matchaug/generators.hpp"
#include "matchaug/io.hpp"
#include "matchaug/obstructions.hpp"
#include "matchaug/oracle.hpp"
#include "matchaug/pipeline.hpp"
#include "matchaug/two_edge_cover.hpp"

namespace py = pybind11;
using namespace matchaug;

namespace {

MapInstance instance_from_edges(int node_count, const std::vector<std::tuple<int, int, int>>& edges) {
    MapInstance inst;
    inst.node_count = node_count;
    for (auto [u, v, c] : edges) inst.edges.push_back({u, v, c});
    return inst;
}

std::vector<std::tuple<int, int, int>> instance_edges(const MapInstance& inst) {
    std::vector<std::tuple<int, int, int>> out;
    for (const Edge& e : inst.edges) out.emplace_back(e.u, e.v, e.cost);
    return out;
}

py::dict solve_to_dict(const MapInstance& inst, int budget_nodes, bool traces) {
    SolveOptions opts;
    opts.budget.max_nodes = budget_nodes;
    opts.collect_traces = traces;
    SolveReport rep = solve(inst, opts);
    py::dict out;
    out["solution"] = rep.solution;
    out["cost"] = rep.cost;
    out["d2_cost"] = rep.d2_cost;
    out["opt"] = rep.opt ? py::cast(*rep.opt) : py::none();
    out["bound_ok"] = rep.bound_ok ? py::cast(*rep.bound_ok) : py::none();
    if (traces) {
        out["decompose_trace"] = rep.decompose_trace;
        out["bridge_trace"] = rep.bridge_trace;
        out["glue_trace"] = rep.glue_trace;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(matchaug, m) {
    m.doc() = "5/3-approximation toolkit for the matching augmentation problem";

    py::register_exception<validation_error>(m, "ValidationError");
    py::register_exception<budget_exceeded>(m, "BudgetExceeded");
    py::register_exception<theorem_violation>(m, "TheoremViolation");

    py::class_<MapInstance>(m, "MapInstance")
        .def(py::init(&instance_from_edges), py::arg("node_count"), py::arg("edges"))
        .def_readonly("node_count", &MapInstance::node_count)
        .def_property_readonly("edges", &instance_edges)
        .def("cost_of", &MapInstance::cost_of)
        .def("__repr__", [](const MapInstance& g) {
            return "MapInstance(n=" + std::to_string(g.node_count) +
                   ", m=" + std::to_string(g.edge_count()) + ")";
        });

    m.def("read_instance", &read_instance_file, py::arg("path"));
    m.def("write_instance", &write_instance_file, py::arg("instance"), py::arg("path"));
    m.def("instance_text", &write_instance_text, py::arg("instance"));

    m.def(
        "validate",
        [](const MapInstance& inst, bool require_2ec) {
            return validate_instance(inst, require_2ec).failures;
        },
        py::arg("instance"), py::arg("require_2ec") = false,
        "Returns the list of named structural failures (empty = valid).");

    m.def(
        "opt_2ecss",
        [](const MapInstance& inst, int budget_nodes) {
            OracleBudget budget;
            budget.max_nodes = budget_nodes;
            auto sol = opt_2ecss(inst, budget);
            return py::make_tuple(sol.cost, sol.witness.edge_ids);
        },
        py::arg("instance"), py::arg("budget_nodes") = 16);

    m.def(
        "min_2edge_cover",
        [](const MapInstance& inst, int budget_nodes) {
            OracleBudget budget;
            budget.max_nodes = budget_nodes;
            auto sol = min_2edge_cover(inst, budget);
            return py::make_tuple(sol.cost, sol.witness.edge_ids);
        },
        py::arg("instance"), py::arg("budget_nodes") = 16);

    m.def(
        "d2_cost", [](const MapInstance& inst) { return compute_d2(inst).cover.cost; },
        py::arg("instance"), "Minimum 2-edge-cover cost via the matching backend.");

    m.def(
        "scan",
        [](const MapInstance& inst) {
            py::list out;
            for (const auto& o : scan_all(inst)) {
                py::dict d;
                d["kind"] = obstruction_kind_name(o.kind);
                d["nodes"] = o.nodes;
                d["edges"] = o.edges;
                out.append(d);
            }
            return out;
        },
        py::arg("instance"));

    m.def(
        "is_well_structured", [](const MapInstance& inst) { return is_well_structured(inst); },
        py::arg("instance"));

    m.def("solve", &solve_to_dict, py::arg("instance"), py::arg("budget_nodes") = 16,
          py::arg("traces") = false);

    m.def(
        "verify",
        [](const MapInstance& inst, const std::vector<int>& solution) {
            return verify_solution(inst, solution).failures;
        },
        py::arg("instance"), py::arg("solution"),
        "Returns the list of named certification failures (empty = pass).");

    m.def("gen_tight_s3", &gen_tight_s3, py::arg("copies"));
    m.def("gen_g1", &gen_g1);
    m.def("gen_g2", &gen_g2, py::arg("k"));
    m.def("gen_g3", &gen_g3, py::arg("k"));
    m.def("gen_random", &gen_random, py::arg("n"), py::arg("density"), py::arg("seed"));
    m.def("gen_planted", &gen_planted, py::arg("seed"));
}
