#pragma once

#include <map>
#include <vector>

#include "matchaug/graph.hpp"
#include "matchaug/rational.hpp"
#include "matchaug/two_edge_cover.hpp"

namespace matchaug {

// Exact-rational credit ledger attached to the current graph H. Components
// and blocks are keyed by their minimum node id, which is stable under the
// merges the algorithm performs.
struct CreditState {
    std::map<int, Rational> c_credit;        // per component
    std::map<int, Rational> b_credit;        // per 2ec-block
    std::vector<Rational> n_credit;          // per black node
    std::vector<int> unit_bridge_degree;     // deg_H^(1) per node

    Rational total() const;
};

// Invariant on (H, credits), asserted at every iteration boundary:
//  (a) every component holds a c-credit >= 1;
//  (b) a component that is a small block holds b-credit exactly 1/3;
//  (c) every other block holds b-credit >= 1;
//  (d) every black node v holds exactly deg^1(v)/3 n-credits.
void check_credit_invariant(const MapInstance& inst, const EdgeSubgraph& h, const CreditState& credits);

struct BridgeState {
    EdgeSubgraph h;
    CreditState credits;
    long long d2_cost = 0;  // cost(H) + total credit == (5/3) d2_cost throughout
};

// Fund the ledger from scratch on H = D2: 2/3 credit per unit-edge, a third
// of a unit-bridge's credit to each of its end nodes, components funded by
// case (bridgeless; holding a large block; two or more small blocks, the
// two-block case leaning on the normal form's unit bridges).
BridgeState init_credits(const MapInstance& inst, const D2Result& d2);

// A pseudo-ear: new edges f_1..f_k stitching distinct components C_1..C_{k-1}
// onto C_0 so that the bridge at pendant block R gets covered. The witness
// path is a shortest r -> head path inside C_0.
struct PseudoEar {
    std::vector<int> path_edges;          // f_1..f_k, ids into E(G) - E(H)
    std::vector<int> through_components;  // component keys C_1..C_{k-1}
    int head = -1;
    int r = -1;                           // block end of the bridge
    int bridge_over = -1;                 // edge id of the bridge ru
    std::vector<int> witness_nodes;       // r..head in C_0
    std::vector<int> witness_edges;
};

// The exclusion-set construction: pick Z (|Z| <= 2) from the bridge end u and
// possibly its other neighbour so that any witness path of the shortest
// pseudo-ear found in G - E(C_0) - Z releases a full credit. A missing path
// contradicts 2-node-connectivity or obstruction-freeness and aborts.
PseudoEar find_pseudo_ear(const MapInstance& inst, const EdgeSubgraph& h,
                          const std::vector<int>& component_nodes, const std::vector<int>& pendant_block);

enum class WitnessCase { WhiteNode, ThreeBridges, TwoBridgesHeavyNode };

struct WitnessCredit {
    WitnessCase which;
    Rational amount;  // >= 1
};

// Identify which release condition the witness path satisfies and how much
// credit it frees: a non-r white node's block credit, or >= 3 black nodes at
// 1/3 each, or 2/3 + 1/3 from two black nodes with one of unit-bridge
// degree >= 2.
WitnessCredit witness_credit(const MapInstance& inst, const EdgeSubgraph& h, const CreditState& credits,
                             const std::vector<int>& witness_nodes, const std::vector<int>& witness_edges);

// Add the ear, merge the components, pay the k new unit-edges from k-1
// c-credits plus the released witness credit, and fold every other absorbed
// credit into the new block so the global ledger stays exact.
void apply_pseudo_ear(const MapInstance& inst, BridgeState& state, const PseudoEar& ear);

struct BridgeCoverResult {
    EdgeSubgraph h;
    std::map<int, Rational> block_credit;  // per final block (= component)
    long long d2_cost = 0;
    long long iterations = 0;
};

using BridgeTraceFn = void (*)(const std::string& line);

// The bridge covering loop: while some component has a bridge, cover the
// bridge at its least pendant block with a pseudo-ear. Terminates within
// |E(D2)| iterations; the result is a bridgeless 2-edge cover containing D2
// whose small blocks hold >= 4/3 credits and large blocks >= 2.
BridgeCoverResult bridge_cover(const MapInstance& inst, const D2Result& d2,
                               std::vector<std::string>* trace = nullptr);

}  // namespace matchaug
