#pragma once

#include "matchaug/graph.hpp"
#include "matchaug/oracle.hpp"

namespace matchaug {

enum class D2Backend { Matching, Oracle };

struct D2Result {
    EdgeSubgraph cover;
    bool normalized = false;
    D2Backend backend = D2Backend::Matching;
};

// Minimum-cost 2-edge cover via matching. All zero-edges are taken (free and
// never harmful), which leaves a minimum-cardinality cover problem on the
// unit graph with demand 2 - deg_M(v) per node; its complement is a simple
// b-matching with bound deg_G(v) - 2, solved exactly by maximum-cardinality
// matching on a node-splitting gadget: one external stub per edge end plus
// deg_G(v) - 2 internal slack nodes per node, a mate edge per unit edge, and
// a stub picked by a slack exactly when its edge is dropped from the cover.
D2Result compute_d2(const MapInstance& inst);

// The same cover through the branch-and-bound oracle; used as the
// independent certification path.
D2Result compute_d2_via_oracle(const MapInstance& inst, const OracleBudget& budget = {});

// Both clauses of the D2 normal form: the cover contains all zero-edges, and
// no pendant 2ec-block incident to a zero-bridge is small.
bool satisfies_d2_normal_form(const MapInstance& inst, const EdgeSubgraph& cover);

// Re-shape a minimum-cost cover into normal form by cost-neutral exchanges:
// absorb the zero-edges, then repair each offending pendant small block (a
// triangle hanging on a zero-bridge) by swapping one of its unit-edges for an
// outside edge at the same node. Falls back to oracle search at small n when
// the exchanges stall; a stall on a well-structured instance is reported as a
// theorem violation, never patched heuristically.
D2Result normalize_d2(const MapInstance& inst, const D2Result& d2);

}  // namespace matchaug
