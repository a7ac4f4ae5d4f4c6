#pragma once

#include <optional>
#include <vector>

#include "matchaug/graph.hpp"

namespace matchaug {

// Exact solvers refuse inputs beyond these limits rather than silently
// degrading; a cap hit raises budget_exceeded, never a heuristic answer.
struct OracleBudget {
    int max_nodes = 16;
    long long max_millis = 60000;
    long long node_visit_cap = 200000000;
};

struct OracleSolution {
    long long cost = 0;
    EdgeSubgraph witness;
};

// Minimum-cost spanning 2EC subgraph by branch and bound: all zero-edges are
// taken for free and the search branches over unit-edges, pruning with the
// bound (cost so far) + ceil(#nodes not yet covered twice / 2) plus
// connectivity feasibility on the remaining edge pool.
OracleSolution opt_2ecss(const MapInstance& inst, const OracleBudget& budget = {});

// Decide opt(inst) >= z. Returns true without any search when n/2 >= z
// (every 2-ECSS needs at least n/2 unit-edges); otherwise decides exactly.
bool opt_at_least(const MapInstance& inst, long long z, const OracleBudget& budget = {});

// Minimum-cost 2-edge cover by branch and bound, independent of the matching
// backend it certifies.
OracleSolution min_2edge_cover(const MapInstance& inst, const OracleBudget& budget = {});

enum class ObstructionKind {
    CutNode,
    ParallelEdges,
    ZeroCostS2,
    UnitCostS2,
    S34,
    R4,
    R8,
};

const char* obstruction_kind_name(ObstructionKind kind);

// Literal evaluation of the obstruction definitions on a given carrier
// (a node set, an edge id, or both depending on the kind), including the
// opt >= 3 side-conditions via opt_at_least. Serves as the definition-level
// cross-check for the polynomial detectors.
bool obstruction_check_by_definition(const MapInstance& inst, ObstructionKind kind,
                                     const std::vector<int>& carrier_nodes,
                                     const std::vector<int>& carrier_edges,
                                     const OracleBudget& budget = {});

}  // namespace matchaug
