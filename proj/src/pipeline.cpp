#include "matchaug/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <cassert>
#include <sstream>

#include "matchaug/bridge_cover.hpp"
#include "matchaug/errors.hpp"
#include "matchaug/generators.hpp"
#include "matchaug/gluing.hpp"
#include "matchaug/io.hpp"
#include "matchaug/two_edge_cover.hpp"

namespace matchaug {

namespace {

// Exact rationals are rendered as "p/q (≈ x.xxx)".
std::string render_ratio(const Rational& r) {
    std::ostringstream out;
    out << r.str() << " (≈ " << std::fixed << std::setprecision(3) << r.approx() << ")";
    return out.str();
}

// Leaves below 12 nodes go to the exact oracle; the oracle budget here is
// fixed by the decomposition guarantee, not by the caller's certification
// budget.
const OracleBudget kLeafBudget{16, 600000, 400000000};

std::vector<int> solve_leaf(const SubInstance& leaf, const SolveOptions& opts, SolveReport& report) {
    std::vector<int> local_solution;
    if (leaf.graph.node_count < 12) {
        local_solution = opt_2ecss(leaf.graph, kLeafBudget).witness.edge_ids;
    } else {
        D2Result d2 = normalize_d2(leaf.graph, compute_d2(leaf.graph));
        BridgeCoverResult covered =
            bridge_cover(leaf.graph, d2, opts.collect_traces ? &report.bridge_trace : nullptr);
        GlueState glue_state{covered.h, covered.block_credit};
        EdgeSubgraph final_local =
            glue(leaf.graph, std::move(glue_state), opts.collect_traces ? &report.glue_trace : nullptr);
        local_solution = final_local.edge_ids;
    }
    std::vector<int> root_ids;
    root_ids.reserve(local_solution.size());
    for (int id : local_solution) root_ids.push_back(leaf.edge_origin[id]);
    std::sort(root_ids.begin(), root_ids.end());
    return root_ids;
}

}  // namespace

SolveReport solve(const MapInstance& inst, const SolveOptions& opts) {
    ValidationReport validation = validate_instance(inst, true);
    if (!validation.ok()) throw validation_error(validation.joined());

    SolveReport report;
    DecompositionTrace trace = decompose(inst);
    if (opts.collect_traces) {
        std::istringstream lines(write_trace_log(trace));
        std::string line;
        while (std::getline(lines, line)) report.decompose_trace.push_back(line);
    }

    std::unordered_map<int, std::vector<int>> leaf_solutions;
    for (int leaf : trace.leaves)
        leaf_solutions[leaf] = solve_leaf(trace.instances[leaf], opts, report);

    report.solution = recombine(trace, std::move(leaf_solutions));
    report.cost = inst.cost_of(report.solution);

    Verdict verdict = verify_solution(inst, report.solution);
    if (!verdict.pass())
        throw theorem_violation("solve output failed verification: " + verdict.failures.front(),
                                write_instance_text(inst));

    report.d2_cost = compute_d2(inst).cover.cost;
    if (inst.node_count <= opts.budget.max_nodes) {
        try {
            report.opt = opt_2ecss(inst, opts.budget).cost;
        } catch (const budget_exceeded&) {
            report.opt.reset();
        }
    }
    if (report.opt) {
        // cost <= max(opt, (5 opt - 6)/3), compared as integers over a common
        // denominator of three.
        long long lhs = 3 * report.cost;
        long long rhs = std::max(3 * *report.opt, 5 * *report.opt - 6);
        report.bound_ok = lhs <= rhs;
    }
    return report;
}

Verdict verify_solution(const MapInstance& inst, const std::vector<int>& edge_ids) {
    Verdict verdict;
    std::vector<int> ids = edge_ids;
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        verdict.failures.push_back("duplicate edge id");
    for (int id : ids)
        if (id < 0 || id >= inst.edge_count()) {
            verdict.failures.push_back("not a subgraph: edge id out of range");
            return verdict;
        }
    EdgeSubgraph sub = EdgeSubgraph::of(inst, ids);
    auto comps = connected_components(sub, true);
    if (comps.size() != 1) {
        verdict.failures.push_back(comps.size() > 1 ? "disconnected" : "empty");
        return verdict;
    }
    if (!find_bridges(sub).empty()) verdict.failures.push_back("bridge introduced");
    return verdict;
}

std::vector<RatioRow> ratio_report(const std::string& family, int max_param, const OracleBudget& budget) {
    std::vector<RatioRow> rows;
    for (int param = 1; param <= max_param; ++param) {
        MapInstance inst;
        std::string label = family + " " + std::to_string(param);
        std::optional<long long> family_opt_bound;
        if (family == "tight-s3") {
            inst = gen_tight_s3(param);
            family_opt_bound = 6 + 5LL * param;
        } else if (family == "g2") {
            inst = gen_g2(param);
            family_opt_bound = 7LL * param + 3;
        } else if (family == "g3") {
            inst = gen_g3(param);
            family_opt_bound = 7LL * param + 3;
        } else if (family == "random") {
            inst = gen_random(8 + param, 0.4, 1000 + param);
        } else {
            throw validation_error("unknown family: " + family);
        }
        RatioRow row;
        row.label = label;
        row.d2_cost = compute_d2(inst).cover.cost;
        SolveOptions opts;
        opts.budget = budget;
        SolveReport rep = solve(inst, opts);
        row.algorithm_cost = rep.cost;
        row.opt = rep.opt;
        if (row.opt) {
            row.opt_over_d2 = render_ratio(Rational(*row.opt, row.d2_cost));
            row.alg_over_opt = render_ratio(Rational(rep.cost, *row.opt));
        } else if (family_opt_bound) {
            Rational gap(*family_opt_bound, row.d2_cost);
            row.opt_over_d2 = ">= " + render_ratio(gap) + " (bound only)";
            row.alg_over_opt = "unknown (budget)";
        } else {
            row.opt_over_d2 = "unknown (budget)";
            row.alg_over_opt = "unknown (budget)";
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_ratio_table(const std::vector<RatioRow>& rows) {
    std::ostringstream out;
    out << "instance | cost(D2) | opt | alg | opt/D2 | alg/opt\n";
    for (const auto& row : rows) {
        out << row.label << " | " << row.d2_cost << " | ";
        if (row.opt)
            out << *row.opt;
        else
            out << "unknown (budget)";
        out << " | " << row.algorithm_cost << " | " << row.opt_over_d2 << " | " << row.alg_over_opt << '\n';
    }
    return out.str();
}

}  // namespace matchaug
