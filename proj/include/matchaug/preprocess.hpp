#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "matchaug/graph.hpp"
#include "matchaug/obstructions.hpp"
#include "matchaug/oracle.hpp"
#include "matchaug/rational.hpp"

namespace matchaug {

// Approximation parameter carried as an exact rational; the -2 additive term
// makes float comparisons dangerous near boundaries, so nothing on the
// certificate path ever converts to double.
struct ApproxConfig {
    Rational alpha{5, 3};
};

// A sub-instance of the decomposition. Nodes may be contractions of several
// root nodes; edges always carry their root identity, so solutions of
// sub-instances are sets of root edge ids.
struct SubInstance {
    MapInstance graph;
    std::vector<int> edge_origin;                 // local edge -> root edge id
    std::vector<std::vector<int>> node_origin;    // local node -> root node set (sorted)

    std::unordered_map<int, int> root_to_local_edge() const;
};

SubInstance root_subinstance(const MapInstance& inst);

enum class StepKind { CutNode, ParallelEdge, UnitS2, ZeroS2, S34, R4, R8 };

const char* step_kind_name(StepKind kind);

// One pre-processing transformation, with everything its undo needs recorded
// eagerly: recombination must not re-search a mutated world.
struct TraceStep {
    StepKind kind;
    int parent = -1;
    std::vector<int> children;                      // instance indices
    std::vector<int> carrier_nodes;                 // parent-local
    std::vector<int> carrier_edges;                 // parent-local
    int s2_edge_root = -1;                          // root id of the contracted S2 edge
    std::vector<int> cycle_root;                    // root ids: S34/zero-S2 spanning cycle,
                                                    // R4 cycle, R8 repair set
    int special_child = -1;                         // zero-S2: child replaced by its cycle
    std::vector<std::vector<int>> child_side_nodes; // per child: parent-local nodes
                                                    // excluding the carrier
};

struct DecompositionTrace {
    std::vector<SubInstance> instances;  // [0] is the root
    std::vector<TraceStep> steps;
    std::vector<int> leaves;
    std::vector<long long> phi_history;  // potential before each iteration and at exit
};

// Sum over the current list of |E(G_i)| + #cutnodes(G_i).
long long phi_value(const std::vector<const SubInstance*>& current);

// The pre-processing while-loop: repeatedly remove the first obstruction (in
// the fixed priority order) from the first listed sub-instance that has >= 12
// nodes and is not well-structured. The potential phi strictly decreases
// every iteration, which is asserted, so the loop runs at most m + n times.
DecompositionTrace decompose(const MapInstance& root, const OracleBudget& budget = {});

// Per-step undo operations; `solutions` maps instance index to a solution in
// root edge ids with the max(opt, alpha*opt - 2) certificate. Each returns
// the parent solution in root edge ids and checks it is a spanning 2-ECSS of
// the parent.
std::vector<int> undo_step(const DecompositionTrace& trace, const TraceStep& step,
                           const std::unordered_map<int, std::vector<int>>& solutions);

// Reverse replay of the whole trace from certified leaf solutions.
std::vector<int> recombine(const DecompositionTrace& trace,
                           std::unordered_map<int, std::vector<int>> leaf_solutions);

// Line-oriented debug log: one step per line (kind, carrier, child ids).
std::string write_trace_log(const DecompositionTrace& trace);

}  // namespace matchaug
