#pragma once

#include <map>
#include <string>
#include <vector>

#include "matchaug/graph.hpp"
#include "matchaug/rational.hpp"

namespace matchaug {

// A swap candidate on a small block: either a unit-edge of the block whose
// ends are both attachments, or (on a 4-cycle) a nonadjacent node pair whose
// other two nodes carry an outside diagonal edge. Good means the two ends
// reach two distinct other blocks; a bad pair funnels into a single target.
struct SwappablePair {
    int block_key = -1;
    int u = -1, w = -1;
    bool diagonal = false;
    int pair_edge = -1;            // edge form: the unit-edge uw of H
    int diagonal_edge = -1;        // diagonal form: the G-edge between the other two nodes
    std::vector<int> drop_edges;   // the block unit-edges a merge discards
    bool good = false;
    int target_block = -1;         // bad pairs: the single block holding the outside neighbours
    bool mergeable = false;        // both u and w have a neighbour in the target
};

struct GlueState {
    EdgeSubgraph h;
    std::map<int, Rational> block_credit;  // keyed by block min node
};

// All swappable pairs of one small block, ordered by (u, w). An empty list
// contradicts 2-node-connectivity plus obstruction-freeness and aborts.
std::vector<SwappablePair> enumerate_swappable_pairs(const MapInstance& inst, const EdgeSubgraph& h,
                                                     const std::vector<int>& block_nodes);

// Auxiliary digraph over the blocks once no good pair remains: small blocks
// are red, large ones green, and each mergeable bad pair contributes an arc
// to its target. Every red node keeps out-degree >= 1, and no red-red
// 2-cycle may pin both of its ends to out-degree 1.
struct AuxDigraph {
    std::vector<int> red_keys;
    std::vector<int> green_keys;
    struct Arc {
        int from_key;
        int to_key;
        SwappablePair pair;
    };
    std::vector<Arc> arcs;
};

AuxDigraph build_daux(const MapInstance& inst, const EdgeSubgraph& h);

// The three merge moves. Each adds the planned unit-edges, discards swapped
// edges one at a time re-verifying 2-edge-connectivity through the
// two-edge-disjoint-paths route, moves the absorbed credits onto the merged
// block, and leaves it with >= 2 surplus.
void merge_via_good_pair(const MapInstance& inst, GlueState& state, const SwappablePair& pair);
void merge_red_green(const MapInstance& inst, GlueState& state, const AuxDigraph::Arc& arc);
void merge_red_chain(const MapInstance& inst, GlueState& state, const AuxDigraph::Arc& first,
                     const AuxDigraph::Arc& second);
void merge_large_cycle(const MapInstance& inst, GlueState& state);

// Full gluing loop: good-pair merges until none, red merges via the
// auxiliary digraph until no small block remains, then plain cycle merges.
// Output is a spanning 2-ECSS with cost <= cost(H) + credit(H) - 2.
EdgeSubgraph glue(const MapInstance& inst, GlueState state, std::vector<std::string>* trace = nullptr);

}  // namespace matchaug
