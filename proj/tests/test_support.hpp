#pragma once

// Shared fixtures and naive differential oracles for the test suite. The
// naive oracles re-derive structural facts by per-element deletion or subset
// enumeration and stay independent of the library's linear-time paths.

#include <algorithm>
#include <set>
#include <vector>

#include "matchaug/graph.hpp"

namespace testsupport {

using matchaug::Edge;
using matchaug::EdgeSubgraph;
using matchaug::MapInstance;

inline MapInstance make(int n, std::vector<std::array<int, 3>> edges) {
    MapInstance g;
    g.node_count = n;
    for (auto [u, v, c] : edges) g.edges.push_back({u, v, c});
    return g;
}

// 4-cycle 1-2-3-4-1 with zero-edges {12, 34}.
inline MapInstance fix_c4() { return make(4, {{0, 1, 0}, {1, 2, 1}, {2, 3, 0}, {3, 0, 1}}); }

// Same cycle with zero-edges {12, 23}: matching violated at node 2.
inline MapInstance fix_c4_bad_matching() {
    return make(4, {{0, 1, 0}, {1, 2, 0}, {2, 3, 1}, {3, 0, 1}});
}

// Two unit triangles sharing the center node 2.
inline MapInstance bowtie_node() {
    return make(5, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 1}, {3, 4, 1}, {4, 2, 1}});
}

// Two unit triangles joined by a single bridge edge.
inline MapInstance bowtie_edge() {
    return make(6, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 4, 1}, {4, 5, 1}, {5, 3, 1}, {2, 3, 1}});
}

// Zero-cost S2: two unit 5-cycles joined only through the ends of the
// zero-edge {10, 11}.
inline MapInstance zero_s2_instance() {
    std::vector<std::array<int, 3>> edges;
    for (int i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5, 1});
    for (int i = 0; i < 5; ++i) edges.push_back({5 + i, 5 + (i + 1) % 5, 1});
    edges.push_back({10, 11, 0});
    edges.push_back({10, 0, 1});
    edges.push_back({11, 1, 1});
    edges.push_back({10, 5, 1});
    edges.push_back({11, 6, 1});
    return make(12, edges);
}

// Unit-cost S2 {12, 13}: three all-unit 4-cycle blocks behind the ends, with
// zero-edges from each end into a different block.
inline MapInstance unit_s2_instance() {
    std::vector<std::array<int, 3>> edges;
    for (int b = 0; b < 3; ++b)
        for (int i = 0; i < 4; ++i) edges.push_back({4 * b + i, 4 * b + (i + 1) % 4, 1});
    int u = 12, v = 13;
    edges.push_back({u, v, 1});
    edges.push_back({0, u, 0});  // zero into block 1
    edges.push_back({4, v, 0});  // zero into block 2
    edges.push_back({1, v, 1});
    edges.push_back({5, u, 1});
    edges.push_back({8, u, 1});
    edges.push_back({9, v, 1});
    return make(14, edges);
}

// S34 on {0,1,2,3}: an alternating 4-cycle with a diagonal separating two
// unit 5-cycle blobs.
inline MapInstance s34_instance() {
    std::vector<std::array<int, 3>> edges;
    edges.push_back({0, 1, 1});
    edges.push_back({1, 2, 0});
    edges.push_back({2, 3, 1});
    edges.push_back({3, 0, 0});
    edges.push_back({1, 3, 1});  // diagonal
    for (int i = 0; i < 5; ++i) edges.push_back({4 + i, 4 + (i + 1) % 5, 1});
    for (int i = 0; i < 5; ++i) edges.push_back({9 + i, 9 + (i + 1) % 5, 1});
    edges.push_back({4, 0, 1});
    edges.push_back({5, 2, 1});
    edges.push_back({9, 0, 1});
    edges.push_back({10, 2, 1});
    edges.push_back({11, 1, 1});
    return make(14, edges);
}

// S34 on a triangle {0,1,2} (one zero-edge, spanning cycle of cost two)
// separating two unit 5-cycle blobs.
inline MapInstance s34_triangle_instance() {
    std::vector<std::array<int, 3>> edges;
    edges.push_back({0, 1, 0});
    edges.push_back({1, 2, 1});
    edges.push_back({2, 0, 1});
    for (int i = 0; i < 5; ++i) edges.push_back({3 + i, 3 + (i + 1) % 5, 1});
    for (int i = 0; i < 5; ++i) edges.push_back({8 + i, 8 + (i + 1) % 5, 1});
    edges.push_back({3, 0, 1});
    edges.push_back({4, 1, 1});
    edges.push_back({5, 2, 1});
    edges.push_back({8, 0, 1});
    edges.push_back({9, 1, 1});
    edges.push_back({10, 2, 1});
    return make(13, edges);
}

// R4: alternating 4-cycle {8,9,10,11} hanging off a unit 8-cycle at one
// antipodal pair; the other pair has degree two.
inline MapInstance r4_instance() {
    std::vector<std::array<int, 3>> edges;
    for (int i = 0; i < 8; ++i) edges.push_back({i, (i + 1) % 8, 1});
    edges.push_back({8, 9, 0});
    edges.push_back({9, 10, 1});
    edges.push_back({10, 11, 0});
    edges.push_back({11, 8, 1});
    edges.push_back({8, 0, 1});
    edges.push_back({10, 3, 1});
    return make(12, edges);
}

// The two 8-node double-quad shapes with exactly two attachments into a
// unit 4-cycle root. u_i are 4..7, v_i are 8..11.
inline MapInstance r8_instance_a() {
    std::vector<std::array<int, 3>> edges;
    for (int i = 0; i < 4; ++i) edges.push_back({i, (i + 1) % 4, 1});  // root
    int u1 = 4, u2 = 5, u3 = 6, u4 = 7, v1 = 8, v2 = 9, v3 = 10, v4 = 11;
    edges.push_back({u1, u2, 1});
    edges.push_back({u2, u3, 0});
    edges.push_back({u3, u4, 1});
    edges.push_back({u4, u1, 0});
    edges.push_back({v1, v2, 1});
    edges.push_back({v2, v3, 0});
    edges.push_back({v3, v4, 1});
    edges.push_back({v4, v1, 0});
    edges.push_back({u2, 0, 1});
    edges.push_back({v1, 1, 1});
    edges.push_back({u3, v1, 1});
    edges.push_back({v4, u2, 1});
    edges.push_back({u4, v3, 1});
    return make(12, edges);
}

inline MapInstance r8_instance_b() {
    std::vector<std::array<int, 3>> edges;
    for (int i = 0; i < 4; ++i) edges.push_back({i, (i + 1) % 4, 1});
    int u1 = 4, u2 = 5, u3 = 6, u4 = 7, v1 = 8, v2 = 9, v3 = 10, v4 = 11;
    edges.push_back({u1, u2, 1});
    edges.push_back({u2, u3, 0});
    edges.push_back({u3, u4, 1});
    edges.push_back({u4, u1, 0});
    edges.push_back({v1, v2, 1});
    edges.push_back({v2, v3, 0});
    edges.push_back({v3, v4, 1});
    edges.push_back({v4, v1, 0});
    edges.push_back({u2, 0, 1});
    edges.push_back({v1, 1, 1});
    edges.push_back({u1, u3, 1});
    edges.push_back({u3, v3, 1});
    edges.push_back({v4, u3, 1});
    edges.push_back({u4, v3, 1});
    edges.push_back({u2, v1, 1});
    return make(12, edges);
}

// The bridge-covering walkthrough: components C1 (two triangles at a cut
// node), C0 (pendant 4-cycle, a two-bridge path, a 5-cycle) and C2 (two
// triangles tied by a three-node path), plus the outside edges the ear uses.
struct BridgeScenario {
    MapInstance g;
    std::vector<int> h_edges;
};

inline BridgeScenario bridge_walkthrough() {
    std::vector<std::array<int, 3>> edges;
    auto push = [&](int u, int v) {
        edges.push_back({u, v, 1});
        return static_cast<int>(edges.size()) - 1;
    };
    std::vector<int> h;
    // C1: triangles 0,1,2 and 2,3,4.
    h.push_back(push(0, 1));
    h.push_back(push(1, 2));
    h.push_back(push(2, 0));
    h.push_back(push(2, 3));
    h.push_back(push(3, 4));
    h.push_back(push(4, 2));
    // C0: block R = 5,6,7,8; bridges 7-9, 9-10, 10-11; 5-cycle 11..15.
    h.push_back(push(5, 6));
    h.push_back(push(6, 7));
    h.push_back(push(7, 8));
    h.push_back(push(8, 5));
    h.push_back(push(7, 9));
    h.push_back(push(9, 10));
    h.push_back(push(10, 11));
    for (int i = 0; i < 5; ++i) h.push_back(push(11 + i, 11 + (i + 1) % 5));
    // C2: triangles 16,17,18 and 19,20,21 joined by path 16-22-23-24-19.
    h.push_back(push(16, 17));
    h.push_back(push(17, 18));
    h.push_back(push(18, 16));
    h.push_back(push(19, 20));
    h.push_back(push(20, 21));
    h.push_back(push(21, 19));
    h.push_back(push(16, 22));
    h.push_back(push(22, 23));
    h.push_back(push(23, 24));
    h.push_back(push(24, 19));
    // Outside edges; the ear f1, f2, f3 come first so the BFS picks them.
    push(2, 6);    // f1: C1 -> R
    push(4, 16);   // f2: C1 -> C2
    push(23, 10);  // f3: C2 -> head
    push(1, 5);
    push(3, 17);
    push(18, 19);
    push(21, 16);
    push(21, 12);
    BridgeScenario scenario;
    scenario.g = make(25, edges);
    scenario.h_edges = h;
    return scenario;
}

// Swappable-pair showcase (a): a root 6-cycle, a triangle with swappable
// edge {6,8}... the pair {7,8}, and a 4-cycle with a diagonal pair {9,11}.
struct GlueScenario {
    MapInstance g;
    std::vector<int> h_edges;
};

inline GlueScenario swaps_showcase_a() {
    std::vector<std::array<int, 3>> edges;
    auto push = [&](int u, int v, int c) {
        edges.push_back({u, v, c});
        return static_cast<int>(edges.size()) - 1;
    };
    std::vector<int> h;
    for (int i = 0; i < 6; ++i) h.push_back(push(i, (i + 1) % 6, 1));  // B0
    h.push_back(push(6, 7, 1));  // B1 triangle: 6,7,8 with zero 8-6
    h.push_back(push(7, 8, 1));
    h.push_back(push(8, 6, 0));
    h.push_back(push(9, 10, 0));  // B2 4-cycle: 9,10,11,12 alternating
    h.push_back(push(10, 11, 1));
    h.push_back(push(11, 12, 0));
    h.push_back(push(12, 9, 1));
    push(7, 0, 1);
    push(8, 1, 1);
    push(9, 2, 1);
    push(11, 3, 1);
    push(10, 12, 1);  // diagonal of B2
    GlueScenario scenario;
    scenario.g = make(13, edges);
    scenario.h_edges = h;
    return scenario;
}

// Swappable-pair showcase (b): triangle B1 with a good edge {6,7} and a bad
// edge {7,8}; 4-cycle B2 whose diagonal pair {10,12} is good.
inline GlueScenario swaps_showcase_b() {
    std::vector<std::array<int, 3>> edges;
    auto push = [&](int u, int v, int c) {
        edges.push_back({u, v, c});
        return static_cast<int>(edges.size()) - 1;
    };
    std::vector<int> h;
    h.push_back(push(0, 1, 1));  // B3: 6-cycle 0..5, cost 4
    h.push_back(push(1, 2, 0));
    h.push_back(push(2, 3, 1));
    h.push_back(push(3, 4, 1));
    h.push_back(push(4, 5, 0));
    h.push_back(push(5, 0, 1));
    h.push_back(push(6, 7, 1));  // B1 triangle 6,7,8 with zero 8-6
    h.push_back(push(7, 8, 1));
    h.push_back(push(8, 6, 0));
    h.push_back(push(9, 10, 0));  // B2 4-cycle 9,10,11,12
    h.push_back(push(10, 11, 1));
    h.push_back(push(11, 12, 0));
    h.push_back(push(12, 9, 1));
    push(7, 5, 1);    // v -> B3
    push(8, 4, 1);    // w -> B3
    push(12, 6, 1);   // y -> u of B1
    push(10, 3, 1);   // x -> B3
    push(9, 11, 1);   // diagonal of B2
    GlueScenario scenario;
    scenario.g = make(13, edges);
    scenario.h_edges = h;
    return scenario;
}

// The auxiliary-digraph example: three small 4-cycles chained by bad pairs
// into a directed triangle, plus one large 6-cycle.
inline GlueScenario daux_example() {
    std::vector<std::array<int, 3>> edges;
    auto push = [&](int u, int v, int c) {
        edges.push_back({u, v, c});
        return static_cast<int>(edges.size()) - 1;
    };
    std::vector<int> h;
    h.push_back(push(0, 1, 1));  // B3 = 0..3
    h.push_back(push(1, 2, 0));
    h.push_back(push(2, 3, 1));
    h.push_back(push(3, 0, 0));
    h.push_back(push(4, 5, 0));  // B2 = 4..7
    h.push_back(push(5, 6, 1));
    h.push_back(push(6, 7, 0));
    h.push_back(push(7, 4, 1));
    h.push_back(push(8, 9, 0));  // B1 = 8..11
    h.push_back(push(9, 10, 1));
    h.push_back(push(10, 11, 0));
    h.push_back(push(11, 8, 1));
    h.push_back(push(12, 13, 1));  // B0 = 12..17
    h.push_back(push(13, 14, 0));
    h.push_back(push(14, 15, 1));
    h.push_back(push(15, 16, 1));
    h.push_back(push(16, 17, 0));
    h.push_back(push(17, 12, 1));
    push(3, 10, 1);   // u4 - x3
    push(2, 10, 1);   // u3 - x3
    push(1, 13, 1);   // u2 - w2
    push(10, 16, 1);  // x3 - w5
    push(8, 5, 1);    // x1 - v2
    push(11, 5, 1);   // x4 - v2
    push(4, 1, 1);    // v1 - u2
    push(7, 1, 1);    // v4 - u2
    GlueScenario scenario;
    scenario.g = make(18, edges);
    scenario.h_edges = h;
    return scenario;
}

// The two-iteration gluing walkthrough: a 5-cycle, an all-unit 4-cycle, a
// large 6-cycle and a pendant triangle whose only neighbour block is large.
inline GlueScenario glue_run_example() {
    std::vector<std::array<int, 3>> edges;
    auto push = [&](int u, int v, int c) {
        edges.push_back({u, v, c});
        return static_cast<int>(edges.size()) - 1;
    };
    std::vector<int> h;
    h.push_back(push(0, 1, 1));  // B1: 5-cycle 0..4, one zero
    h.push_back(push(1, 2, 0));
    h.push_back(push(2, 3, 1));
    h.push_back(push(3, 4, 1));
    h.push_back(push(4, 0, 1));
    h.push_back(push(5, 6, 1));  // B3: 6-cycle 5..10, two zeros
    h.push_back(push(6, 7, 0));
    h.push_back(push(7, 8, 1));
    h.push_back(push(8, 9, 1));
    h.push_back(push(9, 10, 0));
    h.push_back(push(10, 5, 1));
    h.push_back(push(11, 12, 1));  // B2: all-unit 4-cycle 11..14 (large)
    h.push_back(push(12, 13, 1));
    h.push_back(push(13, 14, 1));
    h.push_back(push(14, 11, 1));
    h.push_back(push(15, 16, 1));  // B4: triangle 15,16,17 with zero 16-17
    h.push_back(push(16, 17, 0));
    h.push_back(push(17, 15, 1));
    push(3, 10, 1);   // x4 - w6
    push(4, 9, 1);    // x5 - w5
    push(14, 0, 1);   // y - x1
    push(12, 8, 1);   // x - w4
    push(10, 15, 1);  // w6 - u
    push(7, 16, 1);   // w3 - v
    GlueScenario scenario;
    scenario.g = make(18, edges);
    scenario.h_edges = h;
    return scenario;
}

// ---- naive differential oracles ----

inline int component_count(const MapInstance& g, const std::vector<int>& ids,
                           const std::vector<int>& nodes) {
    std::vector<int> label(g.node_count, -1);
    std::set<int> node_set(nodes.begin(), nodes.end());
    int comps = 0;
    for (int s : nodes) {
        if (label[s] >= 0) continue;
        ++comps;
        std::vector<int> stack{s};
        label[s] = comps;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int id : ids) {
                const Edge& e = g.edges[id];
                if (!e.touches(x)) continue;
                int y = e.other(x);
                if (label[y] < 0 && node_set.count(y)) {
                    label[y] = comps;
                    stack.push_back(y);
                }
            }
        }
    }
    return comps;
}

// Bridges by per-edge deletion recount.
inline std::vector<int> naive_bridges(const MapInstance& g, const std::vector<int>& ids) {
    std::vector<int> all_nodes;
    std::set<int> touched;
    for (int id : ids) {
        touched.insert(g.edges[id].u);
        touched.insert(g.edges[id].v);
    }
    all_nodes.assign(touched.begin(), touched.end());
    int base = component_count(g, ids, all_nodes);
    std::vector<int> bridges;
    for (int id : ids) {
        std::vector<int> rest;
        for (int other : ids)
            if (other != id) rest.push_back(other);
        if (component_count(g, rest, all_nodes) > base) bridges.push_back(id);
    }
    return bridges;
}

// Cut nodes by per-node deletion recount, per component.
inline std::vector<int> naive_cut_nodes(const MapInstance& g, const std::vector<int>& ids) {
    std::vector<int> cuts;
    auto comps = matchaug::connected_components(matchaug::EdgeSubgraph::of(g, ids), false);
    for (const auto& comp : comps) {
        for (int v : comp) {
            std::vector<int> rest_nodes;
            for (int x : comp)
                if (x != v) rest_nodes.push_back(x);
            if (rest_nodes.empty()) continue;
            std::vector<int> rest_ids;
            for (int id : ids)
                if (!g.edges[id].touches(v)) rest_ids.push_back(id);
            if (component_count(g, rest_ids, rest_nodes) >= 2) cuts.push_back(v);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

// Exhaustive minimum 2-ECSS / 2-edge cover over unit-edge subsets; requires
// few unit-edges and is independent of the branch-and-bound.
inline long long enum_min_cost(const MapInstance& g, bool two_ec, int max_units = 22) {
    std::vector<int> units = g.unit_edges();
    std::vector<int> zeros = g.zero_edges();
    if (static_cast<int>(units.size()) > max_units) return -2;
    long long best = -1;
    for (unsigned long long mask = 0; mask < (1ULL << units.size()); ++mask) {
        long long cost = static_cast<long long>(__builtin_popcountll(mask));
        if (best >= 0 && cost >= best) continue;
        std::vector<int> ids = zeros;
        for (size_t i = 0; i < units.size(); ++i)
            if (mask >> i & 1) ids.push_back(units[i]);
        EdgeSubgraph sub = EdgeSubgraph::of(g, ids);
        if (two_ec) {
            if (!matchaug::is_two_edge_connected(sub, true)) continue;
        } else {
            std::vector<int> deg(g.node_count, 0);
            for (int id : ids) {
                ++deg[g.edges[id].u];
                ++deg[g.edges[id].v];
            }
            bool ok = true;
            for (int v = 0; v < g.node_count; ++v) ok = ok && deg[v] >= 2;
            if (!ok) continue;
        }
        best = cost;
    }
    return best;
}

}  // namespace testsupport
