#include "matchaug/graph.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <queue>

#include "matchaug/errors.hpp"

namespace matchaug {

long long MapInstance::cost_of(const std::vector<int>& edge_ids) const {
    long long c = 0;
    for (int id : edge_ids) c += edges[id].cost;
    return c;
}

long long MapInstance::total_cost() const {
    long long c = 0;
    for (const Edge& e : edges) c += e.cost;
    return c;
}

std::vector<int> MapInstance::zero_edges() const {
    std::vector<int> out;
    for (int i = 0; i < edge_count(); ++i)
        if (edges[i].cost == 0) out.push_back(i);
    return out;
}

std::vector<int> MapInstance::unit_edges() const {
    std::vector<int> out;
    for (int i = 0; i < edge_count(); ++i)
        if (edges[i].cost != 0) out.push_back(i);
    return out;
}

std::string ValidationReport::joined() const {
    std::string s;
    for (const auto& f : failures) {
        if (!s.empty()) s += "; ";
        s += f;
    }
    return s;
}

ValidationReport validate_instance(const MapInstance& inst, bool require_2ec) {
    ValidationReport rep;
    if (inst.node_count < 2) rep.failures.push_back("fewer than two nodes");
    std::vector<int> zero_deg(inst.node_count, 0);
    for (int i = 0; i < inst.edge_count(); ++i) {
        const Edge& e = inst.edges[i];
        if (e.u < 0 || e.v < 0 || e.u >= inst.node_count || e.v >= inst.node_count) {
            rep.failures.push_back("edge " + std::to_string(i) + " has an endpoint out of range");
            continue;
        }
        if (e.u == e.v) rep.failures.push_back("self-loop at edge " + std::to_string(i));
        if (e.cost != 0 && e.cost != 1)
            rep.failures.push_back("edge " + std::to_string(i) + " has cost outside {0,1}");
        if (e.cost == 0) {
            ++zero_deg[e.u];
            ++zero_deg[e.v];
        }
    }
    for (int v = 0; v < inst.node_count; ++v)
        if (zero_deg[v] > 1)
            rep.failures.push_back("matching violated at node " + std::to_string(v + 1));
    if (require_2ec && rep.ok() && !is_two_edge_connected_instance(inst))
        rep.failures.push_back("graph is not 2-edge-connected");
    return rep;
}

EdgeSubgraph EdgeSubgraph::of(const MapInstance& inst, std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    EdgeSubgraph sub;
    sub.parent = &inst;
    sub.cost = inst.cost_of(ids);
    sub.edge_ids = std::move(ids);
    return sub;
}

EdgeSubgraph EdgeSubgraph::full(const MapInstance& inst) {
    std::vector<int> ids(inst.edge_count());
    for (int i = 0; i < inst.edge_count(); ++i) ids[i] = i;
    return of(inst, std::move(ids));
}

bool EdgeSubgraph::contains(int edge_id) const {
    return std::binary_search(edge_ids.begin(), edge_ids.end(), edge_id);
}

std::vector<char> EdgeSubgraph::edge_mask() const {
    std::vector<char> mask(parent->edge_count(), 0);
    for (int id : edge_ids) mask[id] = 1;
    return mask;
}

Adjacency Adjacency::build(const MapInstance& inst, const std::vector<int>& edge_ids) {
    Adjacency adj;
    adj.at.resize(inst.node_count);
    std::vector<int> sorted = edge_ids;
    std::sort(sorted.begin(), sorted.end());
    for (int id : sorted) {
        const Edge& e = inst.edges[id];
        adj.at[e.u].push_back({e.v, id});
        adj.at[e.v].push_back({e.u, id});
    }
    return adj;
}

Adjacency Adjacency::build_full(const MapInstance& inst) {
    std::vector<int> ids(inst.edge_count());
    for (int i = 0; i < inst.edge_count(); ++i) ids[i] = i;
    return build(inst, ids);
}

std::vector<std::vector<int>> connected_components(const EdgeSubgraph& sub, bool include_isolated) {
    const MapInstance& inst = *sub.parent;
    Adjacency adj = Adjacency::build(inst, sub.edge_ids);
    std::vector<int> comp(inst.node_count, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < inst.node_count; ++s) {
        if (comp[s] >= 0) continue;
        if (adj.at[s].empty() && !include_isolated) continue;
        int c = static_cast<int>(out.size());
        out.emplace_back();
        comp[s] = c;
        std::vector<int> stack{s};
        out[c].push_back(s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& arc : adj.at[x]) {
                if (comp[arc.to] < 0) {
                    comp[arc.to] = c;
                    out[c].push_back(arc.to);
                    stack.push_back(arc.to);
                }
            }
        }
        std::sort(out[c].begin(), out[c].end());
    }
    return out;
}

namespace {

// Iterative lowpoint DFS over an edge subset. Parallel edges are handled by
// skipping the tree edge by id, so a parallel copy acts as a back edge.
struct LowpointRun {
    std::vector<int> bridges;
    std::vector<char> is_cut;

    LowpointRun(const MapInstance& inst, const std::vector<int>& edge_ids) {
        Adjacency adj = Adjacency::build(inst, edge_ids);
        int n = inst.node_count;
        is_cut.assign(n, 0);
        std::vector<int> disc(n, -1), low(n, -1), parent_edge(n, -1), child_count(n, 0);
        std::vector<size_t> it(n, 0);
        int timer = 0;
        for (int root = 0; root < n; ++root) {
            if (disc[root] >= 0 || adj.at[root].empty()) continue;
            std::vector<int> stack{root};
            disc[root] = low[root] = timer++;
            while (!stack.empty()) {
                int x = stack.back();
                if (it[x] < adj.at[x].size()) {
                    auto arc = adj.at[x][it[x]++];
                    if (arc.edge == parent_edge[x]) continue;
                    if (disc[arc.to] < 0) {
                        disc[arc.to] = low[arc.to] = timer++;
                        parent_edge[arc.to] = arc.edge;
                        ++child_count[x];
                        stack.push_back(arc.to);
                    } else {
                        low[x] = std::min(low[x], disc[arc.to]);
                    }
                } else {
                    stack.pop_back();
                    if (!stack.empty()) {
                        int p = stack.back();
                        low[p] = std::min(low[p], low[x]);
                        if (low[x] > disc[p]) bridges.push_back(parent_edge[x]);
                        if (p != root && low[x] >= disc[p]) is_cut[p] = 1;
                    }
                }
            }
            if (child_count[root] >= 2) is_cut[root] = 1;
        }
        std::sort(bridges.begin(), bridges.end());
    }
};

}  // namespace

std::vector<int> find_bridges(const EdgeSubgraph& sub) {
    return LowpointRun(*sub.parent, sub.edge_ids).bridges;
}

std::vector<int> cut_nodes(const EdgeSubgraph& sub) {
    LowpointRun run(*sub.parent, sub.edge_ids);
    std::vector<int> out;
    for (int v = 0; v < sub.parent->node_count; ++v)
        if (run.is_cut[v]) out.push_back(v);
    return out;
}

BlockDecomposition block_decomposition(const EdgeSubgraph& sub) {
    const MapInstance& inst = *sub.parent;
    LowpointRun run(inst, sub.edge_ids);
    BlockDecomposition dec;
    dec.bridges = run.bridges;
    dec.node_color.assign(inst.node_count, NodeColor::Black);
    dec.block_of_node.assign(inst.node_count, -1);
    for (int v = 0; v < inst.node_count; ++v)
        if (run.is_cut[v]) dec.cut_nodes.push_back(v);

    std::vector<char> bridge_mask(inst.edge_count(), 0);
    for (int b : dec.bridges) bridge_mask[b] = 1;
    std::vector<int> non_bridge;
    non_bridge.reserve(sub.edge_ids.size());
    for (int id : sub.edge_ids)
        if (!bridge_mask[id]) non_bridge.push_back(id);

    EdgeSubgraph rest = EdgeSubgraph::of(inst, non_bridge);
    for (const auto& comp : connected_components(rest, false)) {
        if (comp.size() < 2) continue;
        int b = dec.block_count();
        dec.blocks.push_back(comp);
        for (int v : comp) {
            dec.node_color[v] = NodeColor::White;
            dec.block_of_node[v] = b;
        }
    }
    dec.block_edges.resize(dec.block_count());
    for (int id : non_bridge) {
        int b = dec.block_of_node[inst.edges[id].u];
        assert(b >= 0 && b == dec.block_of_node[inst.edges[id].v]);
        dec.block_edges[b].push_back(id);
    }
    dec.block_size_class.resize(dec.block_count());
    for (int b = 0; b < dec.block_count(); ++b) {
        int units = 0;
        for (int id : dec.block_edges[b]) units += inst.edges[id].cost;
        dec.block_size_class[b] = units <= 2 ? BlockSize::Small : BlockSize::Large;
    }
    return dec;
}

bool is_two_edge_connected(const EdgeSubgraph& sub, bool spanning) {
    const MapInstance& inst = *sub.parent;
    if (inst.node_count < 2) return false;
    auto comps = connected_components(sub, true);
    if (spanning) {
        if (comps.size() != 1) return false;
    } else {
        int touched_comps = 0;
        std::vector<char> touched(inst.node_count, 0);
        for (int id : sub.edge_ids) touched[inst.edges[id].u] = touched[inst.edges[id].v] = 1;
        int touched_total = 0;
        for (int v = 0; v < inst.node_count; ++v) touched_total += touched[v];
        if (touched_total < 2) return false;
        for (const auto& comp : comps) {
            bool any = false;
            for (int v : comp) any = any || touched[v];
            if (any && comp.size() >= 2) ++touched_comps;
            if (any && comp.size() < 2) return false;
        }
        if (touched_comps != 1) return false;
    }
    return find_bridges(sub).empty();
}

bool is_two_edge_connected_instance(const MapInstance& inst) {
    return is_two_edge_connected(EdgeSubgraph::full(inst), true);
}

bool two_edge_disjoint_paths_exist(const EdgeSubgraph& sub, int v, int w) {
    if (v == w) throw validation_error("two_edge_disjoint_paths_exist requires v != w");
    const MapInstance& inst = *sub.parent;
    // Unit-capacity max flow, stopped after two augmentations. Each
    // undirected edge becomes a pair of arcs with one joint unit of capacity.
    struct Arc {
        int to;
        int cap;
        int rev;
    };
    std::vector<std::vector<Arc>> g(inst.node_count);
    for (int id : sub.edge_ids) {
        const Edge& e = inst.edges[id];
        g[e.u].push_back({e.v, 1, static_cast<int>(g[e.v].size())});
        g[e.v].push_back({e.u, 1, static_cast<int>(g[e.u].size()) - 1});
    }
    int flow = 0;
    for (int round = 0; round < 2; ++round) {
        std::vector<int> prev_node(inst.node_count, -1), prev_arc(inst.node_count, -1);
        std::queue<int> q;
        q.push(v);
        prev_node[v] = v;
        while (!q.empty() && prev_node[w] < 0) {
            int x = q.front();
            q.pop();
            for (int i = 0; i < static_cast<int>(g[x].size()); ++i) {
                const Arc& a = g[x][i];
                if (a.cap > 0 && prev_node[a.to] < 0) {
                    prev_node[a.to] = x;
                    prev_arc[a.to] = i;
                    q.push(a.to);
                }
            }
        }
        if (prev_node[w] < 0) break;
        for (int x = w; x != v; x = prev_node[x]) {
            Arc& a = g[prev_node[x]][prev_arc[x]];
            a.cap -= 1;
            g[x][a.rev].cap += 1;
        }
        ++flow;
    }
    return flow >= 2;
}

InducedSubInstance induced_subinstance(const MapInstance& inst, const std::vector<int>& nodes) {
    InducedSubInstance out;
    out.nodes = nodes;
    std::sort(out.nodes.begin(), out.nodes.end());
    std::vector<int> local(inst.node_count, -1);
    for (int i = 0; i < static_cast<int>(out.nodes.size()); ++i) local[out.nodes[i]] = i;
    out.graph.node_count = static_cast<int>(out.nodes.size());
    for (int id = 0; id < inst.edge_count(); ++id) {
        const Edge& e = inst.edges[id];
        if (local[e.u] >= 0 && local[e.v] >= 0) {
            out.graph.edges.push_back({local[e.u], local[e.v], e.cost});
            out.edge_origin.push_back(id);
        }
    }
    return out;
}

std::vector<InducedSubInstance> two_ec_v_blocks(const MapInstance& inst, int v) {
    std::vector<int> rest_ids;
    for (int id = 0; id < inst.edge_count(); ++id)
        if (!inst.edges[id].touches(v)) rest_ids.push_back(id);
    EdgeSubgraph rest = EdgeSubgraph::of(inst, rest_ids);
    std::vector<std::vector<int>> comps;
    for (auto& comp : connected_components(rest, true)) {
        if (comp.size() == 1 && comp[0] == v) continue;
        comps.push_back(std::move(comp));
    }
    if (comps.size() < 2) throw validation_error("two_ec_v_blocks: node is not a cut node");
    std::vector<InducedSubInstance> out;
    for (auto& comp : comps) {
        comp.push_back(v);
        out.push_back(induced_subinstance(inst, comp));
    }
    return out;
}

ContractionResult contract(const MapInstance& inst, const std::vector<int>& shrink_set) {
    std::vector<char> in_set(inst.node_count, 0);
    for (int v : shrink_set) in_set[v] = 1;
    int set_size = static_cast<int>(shrink_set.size());
    if (set_size < 1 || set_size >= inst.node_count)
        throw validation_error("contract: shrink set must be a proper nonempty node subset");
    {
        std::vector<int> inside;
        for (int id = 0; id < inst.edge_count(); ++id) {
            const Edge& e = inst.edges[id];
            if (in_set[e.u] && in_set[e.v]) inside.push_back(id);
        }
        EdgeSubgraph induced = EdgeSubgraph::of(inst, inside);
        auto comps = connected_components(induced, false);
        int covering = -1;
        for (const auto& c : comps)
            if (static_cast<int>(c.size()) == set_size) covering = 1;
        if (set_size > 1 && covering < 0)
            throw validation_error("contract: shrink set does not induce a connected subgraph");
    }
    ContractionResult res;
    res.node_map.assign(inst.node_count, -1);
    int rep = *std::min_element(shrink_set.begin(), shrink_set.end());
    int next = 0;
    for (int v = 0; v < inst.node_count; ++v) {
        if (in_set[v] && v != rep) continue;
        res.node_map[v] = next++;
    }
    res.contracted_node = res.node_map[rep];
    for (int v : shrink_set) res.node_map[v] = res.contracted_node;
    res.quotient.node_count = next;
    for (int id = 0; id < inst.edge_count(); ++id) {
        const Edge& e = inst.edges[id];
        int mu = res.node_map[e.u], mv = res.node_map[e.v];
        if (mu == mv) continue;  // edges inside the set and their parallels vanish
        res.quotient.edges.push_back({mu, mv, e.cost});
        res.edge_origin.push_back(id);
    }
    return res;
}

}  // namespace matchaug
