#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace matchaug {

// Loop-free multigraph with {0,1} edge costs whose zero-edges form a matching.
// Edges carry stable integer ids (their position in `edges`); parallel edges
// are distinguished by id. Node ids are 0-based internally (1-based in files).
struct Edge {
    int u = -1;
    int v = -1;
    int cost = 1;

    int other(int x) const { return x == u ? v : u; }
    bool touches(int x) const { return u == x || v == x; }
};

struct MapInstance {
    int node_count = 0;
    std::vector<Edge> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
    long long cost_of(const std::vector<int>& edge_ids) const;
    long long total_cost() const;
    std::vector<int> zero_edges() const;
    std::vector<int> unit_edges() const;
};

struct ValidationReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    std::string joined() const;
};

// Structural checks: no loops, zero-edges form a matching, n >= 2, and
// (when requested) the whole graph is spanning 2EC. Violations are reported,
// never silently fixed.
ValidationReport validate_instance(const MapInstance& inst, bool require_2ec = false);

// A subset of instance edges with cached cost; solutions, D2 and the evolving
// graph H are all values of this type. Immutable after construction.
struct EdgeSubgraph {
    const MapInstance* parent = nullptr;
    std::vector<int> edge_ids;  // sorted, unique
    long long cost = 0;

    static EdgeSubgraph of(const MapInstance& inst, std::vector<int> ids);
    static EdgeSubgraph full(const MapInstance& inst);

    bool contains(int edge_id) const;
    std::vector<char> edge_mask() const;
};

// Per-node incidence lists for an edge subset, neighbors ordered by edge id.
// All traversals in the library iterate these lists, which pins down every
// BFS/DFS tie-break.
struct Adjacency {
    struct Arc {
        int to;
        int edge;
    };
    std::vector<std::vector<Arc>> at;

    static Adjacency build(const MapInstance& inst, const std::vector<int>& edge_ids);
    static Adjacency build_full(const MapInstance& inst);
};

// Partition of the parent's nodes into connected components of `sub`
// (isolated nodes appear as singletons when include_isolated is set).
// Components and their node lists are sorted ascending.
std::vector<std::vector<int>> connected_components(const EdgeSubgraph& sub, bool include_isolated = true);

// Edges whose deletion increases the component count. Parallel pairs are
// never bridges. Linear-time lowpoint search; the per-edge deletion recount
// lives in the test suite as a differential oracle.
std::vector<int> find_bridges(const EdgeSubgraph& sub);

enum class NodeColor : std::uint8_t { White, Black };
enum class BlockSize : std::uint8_t { Small, Large };

// Bridges, 2ec-blocks, cut nodes and node colors of a subgraph. A 2ec-block
// is a maximal bridgeless connected subgraph with >= 2 nodes (equivalently a
// component of order >= 2 after deleting all bridges); a node is white iff it
// lies in some block; a block is small iff it has <= 2 unit-edges.
struct BlockDecomposition {
    std::vector<int> bridges;                    // sorted edge ids
    std::vector<std::vector<int>> blocks;        // node sets, each sorted; blocks sorted by min node
    std::vector<std::vector<int>> block_edges;   // edge ids per block, sorted
    std::vector<int> cut_nodes;                  // sorted
    std::vector<NodeColor> node_color;           // size n
    std::vector<BlockSize> block_size_class;     // per block
    std::vector<int> block_of_node;              // -1 for black / untouched nodes

    int block_count() const { return static_cast<int>(blocks.size()); }
};

BlockDecomposition block_decomposition(const EdgeSubgraph& sub);

// Articulation nodes of the subgraph (per component).
std::vector<int> cut_nodes(const EdgeSubgraph& sub);

// True iff the subgraph has >= 2 nodes, is connected (over all parent nodes
// when `spanning`, over the touched nodes otherwise) and has no bridges.
bool is_two_edge_connected(const EdgeSubgraph& sub, bool spanning);

bool is_two_edge_connected_instance(const MapInstance& inst);

// Max v-w flow with unit edge capacities >= 2. Used to validate edge
// discards: if H - e has two edge-disjoint v,w paths then H - e is 2EC.
bool two_edge_disjoint_paths_exist(const EdgeSubgraph& sub, int v, int w);

// An induced sub-instance together with the mapping back into its parent.
// `nodes[i]` is the parent node for local node i; `edge_origin[j]` the parent
// edge id for local edge j. Induction keeps every parallel copy between
// member nodes.
struct InducedSubInstance {
    MapInstance graph;
    std::vector<int> nodes;        // sorted parent node ids
    std::vector<int> edge_origin;  // local edge -> parent edge id
};

InducedSubInstance induced_subinstance(const MapInstance& inst, const std::vector<int>& nodes);

// The 2ec-v-blocks of a 2EC instance at a cut node v: one induced
// sub-instance per component C of inst - v, on {v} union V(C). Their edge
// sets are pairwise disjoint and cover E(inst).
std::vector<InducedSubInstance> two_ec_v_blocks(const MapInstance& inst, int v);

// Contraction of a connected node set S to a single node. Loops (the edges
// inside S and their parallel copies) are deleted; every other edge keeps its
// identity via `edge_origin`, with delta(S) edges re-endpointed to v_hat.
struct ContractionResult {
    MapInstance quotient;
    std::vector<int> node_map;     // parent node -> quotient node
    int contracted_node = -1;      // v_hat
    std::vector<int> edge_origin;  // quotient edge -> parent edge id
};

ContractionResult contract(const MapInstance& inst, const std::vector<int>& shrink_set);

}  // namespace matchaug
