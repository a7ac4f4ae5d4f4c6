#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matchaug/graph.hpp"
#include "matchaug/oracle.hpp"
#include "matchaug/preprocess.hpp"
#include "matchaug/rational.hpp"

namespace matchaug {

struct SolveOptions {
    OracleBudget budget;        // caps the opt certification, not the algorithm
    ApproxConfig approx;
    bool collect_traces = false;
};

struct SolveReport {
    std::vector<int> solution;         // edge ids of the input instance
    long long cost = 0;
    long long d2_cost = 0;
    std::optional<long long> opt;      // absent when the oracle budget is exceeded
    std::optional<bool> bound_ok;      // cost <= max(opt, (5 opt - 6)/3), exact rationals
    std::vector<std::string> decompose_trace;
    std::vector<std::string> bridge_trace;
    std::vector<std::string> glue_trace;
};

// End-to-end solve: decompose, solve every leaf (exhaustively below 12 nodes,
// through D2 -> bridge covering -> gluing otherwise), recombine, verify.
SolveReport solve(const MapInstance& inst, const SolveOptions& opts = {});

struct Verdict {
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};

// Certify a claimed solution: a subset of the instance's edges that spans and
// is 2-edge-connected; each failure is named.
Verdict verify_solution(const MapInstance& inst, const std::vector<int>& edge_ids);

struct RatioRow {
    std::string label;
    long long d2_cost = 0;
    std::optional<long long> opt;
    long long algorithm_cost = 0;
    std::string opt_over_d2;   // exact rational rendering, or the known lower bound
    std::string alg_over_opt;
};

// Per-parameter gap table for a fixture family ("tight-s3", "g2", "g3",
// "random"): cost(D2), opt (oracle when the budget allows), algorithm cost,
// exact ratios.
std::vector<RatioRow> ratio_report(const std::string& family, int max_param, const OracleBudget& budget);

std::string format_ratio_table(const std::vector<RatioRow>& rows);

}  // namespace matchaug
