#pragma once

#include <optional>
#include <vector>

#include "matchaug/graph.hpp"
#include "matchaug/oracle.hpp"

namespace matchaug {

// A detected obstruction: the carrier (nodes and/or edge ids per kind) plus
// the certificate evidence needed to undo its removal later (spanning cycles,
// repair edge sets).
struct Obstruction {
    ObstructionKind kind;
    std::vector<int> nodes;        // cut node; S2 end nodes; S34/R4/R8 node set (sorted)
    std::vector<int> edges;        // S2 edge; the parallel pair
    std::vector<int> cycle_edges;  // S34/R4: cost-two spanning cycle; R8: the cost-5 repair set F
    std::vector<int> cert_nodes;   // R8: attachments a1, a2
};

// Polynomial-time detectors, one per kind. Each returns the lexicographically
// least carrier of its kind, or nothing.
std::optional<Obstruction> find_cut_node(const MapInstance& inst);
std::optional<Obstruction> find_parallel_edges(const MapInstance& inst);
std::optional<Obstruction> find_unit_cost_s2(const MapInstance& inst, const OracleBudget& budget = {});
std::optional<Obstruction> find_zero_cost_s2(const MapInstance& inst);
std::optional<Obstruction> find_s34(const MapInstance& inst, const OracleBudget& budget = {});
std::optional<Obstruction> find_r4(const MapInstance& inst);
std::optional<Obstruction> find_r8(const MapInstance& inst);

// Membership checks with certificates, evaluated against the literal
// definitions (the side-conditions go through opt_at_least).
bool is_zero_cost_s2(const MapInstance& inst, int edge_id);
bool is_unit_cost_s2(const MapInstance& inst, int edge_id, const OracleBudget& budget = {});
bool is_s34(const MapInstance& inst, const std::vector<int>& nodes, const OracleBudget& budget = {});
bool is_r4(const MapInstance& inst, const std::vector<int>& nodes);
bool is_r8(const MapInstance& inst, const std::vector<int>& nodes);

// First obstruction in the fixed removal priority: cut-node, then (on a 2NC
// instance) parallel-edges, unit-cost-S2, zero-cost-S2, S34, R4, R8. Ties
// inside a kind break by lexicographic carrier. Deterministic.
std::optional<Obstruction> detect(const MapInstance& inst, const OracleBudget& budget = {});

// Every occurrence of every kind, for the CLI scan verb (not on the solve path).
std::vector<Obstruction> scan_all(const MapInstance& inst, const OracleBudget& budget = {});

// n >= 12 and no obstruction of any kind.
bool is_well_structured(const MapInstance& inst, const OracleBudget& budget = {});

}  // namespace matchaug
