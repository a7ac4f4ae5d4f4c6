#include "matchaug/gluing.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <set>
#include <sstream>

#include "matchaug/errors.hpp"
#include "matchaug/io.hpp"

namespace matchaug {

namespace {

struct GlueView {
    BlockDecomposition dec;
    std::vector<int> block_key;
    std::map<int, int> by_key;

    GlueView(const MapInstance& inst, const EdgeSubgraph& h) {
        dec = block_decomposition(h);
        if (!dec.bridges.empty())
            throw theorem_violation("gluing invariant: H has a bridge", write_instance_text(inst));
        for (int b = 0; b < dec.block_count(); ++b) {
            block_key.push_back(dec.blocks[b].front());
            by_key[dec.blocks[b].front()] = b;
        }
        std::vector<int> deg(inst.node_count, 0);
        std::set<std::pair<int, int>> seen;
        for (int id : h.edge_ids) {
            const Edge& e = inst.edges[id];
            ++deg[e.u];
            ++deg[e.v];
            auto key = std::minmax(e.u, e.v);
            if (!seen.insert({key.first, key.second}).second)
                throw theorem_violation("gluing invariant: H is not simple", write_instance_text(inst));
        }
        for (int v = 0; v < inst.node_count; ++v)
            if (deg[v] < 2)
                throw theorem_violation("gluing invariant: node of degree < 2", write_instance_text(inst));
        // Bridgeless + min degree two: blocks are exactly the components.
        for (int v = 0; v < inst.node_count; ++v)
            if (dec.block_of_node[v] < 0)
                throw theorem_violation("gluing invariant: node outside every block",
                                        write_instance_text(inst));
    }
};

// Lowest-id G-edge from node x into the node set `target`, excluding H edges.
int edge_into(const MapInstance& inst, const EdgeSubgraph& h, int x, const std::vector<char>& target) {
    for (int id = 0; id < inst.edge_count(); ++id) {
        if (h.contains(id)) continue;
        const Edge& e = inst.edges[id];
        if ((e.u == x && target[e.v]) || (e.v == x && target[e.u])) return id;
    }
    return -1;
}

std::vector<char> mask_of(const MapInstance& inst, const std::vector<int>& nodes) {
    std::vector<char> m(inst.node_count, 0);
    for (int v : nodes) m[v] = 1;
    return m;
}

// Apply a merge: add edges, then discard swapped edges one at a time with
// the two-edge-disjoint-paths check, then settle the credit transfer.
void apply_merge(const MapInstance& inst, GlueState& state, const std::vector<int>& add_edges,
                 const std::vector<int>& discard_edges, const std::vector<int>& absorbed_keys,
                 const char* what) {
    GlueView before(inst, state.h);
    std::vector<int> ids = state.h.edge_ids;
    for (int id : add_edges) {
        if (state.h.contains(id) || inst.edges[id].cost != 1)
            throw theorem_violation(std::string(what) + ": planned edge is not a new unit-edge",
                                    write_instance_text(inst));
        ids.push_back(id);
    }
    EdgeSubgraph current = EdgeSubgraph::of(inst, ids);
    for (int id : discard_edges) {
        if (!current.contains(id) || inst.edges[id].cost != 1)
            throw theorem_violation(std::string(what) + ": discard is not a held unit-edge",
                                    write_instance_text(inst));
        std::vector<int> rest = current.edge_ids;
        rest.erase(std::find(rest.begin(), rest.end(), id));
        EdgeSubgraph without = EdgeSubgraph::of(inst, rest);
        if (!two_edge_disjoint_paths_exist(without, inst.edges[id].u, inst.edges[id].v))
            throw theorem_violation(std::string(what) + ": discard would break 2-edge-connectivity",
                                    write_instance_text(inst));
        current = without;
    }

    long long net = static_cast<long long>(add_edges.size()) - static_cast<long long>(discard_edges.size());
    Rational moved;
    for (int key : absorbed_keys) {
        auto it = state.block_credit.find(key);
        assert(it != state.block_credit.end());
        moved += it->second;
        state.block_credit.erase(it);
    }
    Rational surplus = moved - Rational(net);
    if (surplus < Rational(2))
        throw theorem_violation(std::string(what) + ": merged block would hold < 2 credits",
                                write_instance_text(inst));

    state.h = current;
    GlueView after(inst, state.h);
    // The absorbed blocks must now share one block; give it the surplus.
    int merged_block = after.dec.block_of_node[absorbed_keys.front()];
    for (int key : absorbed_keys)
        if (after.dec.block_of_node[key] != merged_block)
            throw theorem_violation(std::string(what) + ": absorbed blocks did not merge",
                                    write_instance_text(inst));
    if (after.dec.block_count() >= before.dec.block_count())
        throw theorem_violation(std::string(what) + ": block count failed to decrease",
                                write_instance_text(inst));
    state.block_credit[after.block_key[merged_block]] = surplus;
    // Untouched blocks keep their credits; the keys must line up exactly.
    for (int b = 0; b < after.dec.block_count(); ++b)
        if (!state.block_credit.count(after.block_key[b]))
            throw theorem_violation(std::string(what) + ": block lost its credit entry",
                                    write_instance_text(inst));
    if (state.block_credit.size() != static_cast<size_t>(after.dec.block_count()))
        throw theorem_violation(std::string(what) + ": stale credit entries", write_instance_text(inst));
}

}  // namespace

std::vector<SwappablePair> enumerate_swappable_pairs(const MapInstance& inst, const EdgeSubgraph& h,
                                                     const std::vector<int>& block_nodes) {
    GlueView view(inst, h);
    int block = view.dec.block_of_node[block_nodes.front()];
    assert(view.dec.blocks[block] == block_nodes);
    if (view.dec.block_size_class[block] != BlockSize::Small)
        throw validation_error("enumerate_swappable_pairs expects a small block");

    std::vector<char> in_block = mask_of(inst, block_nodes);
    // Blocks adjacent to each node of the block through non-H edges of G.
    auto outside_blocks = [&](int x) {
        std::set<int> keys;
        for (int id = 0; id < inst.edge_count(); ++id) {
            const Edge& e = inst.edges[id];
            if (!e.touches(x)) continue;
            int y = e.other(x);
            if (in_block[y]) continue;
            keys.insert(view.block_key[view.dec.block_of_node[y]]);
        }
        return keys;
    };

    auto classify = [&](SwappablePair& pair) {
        auto su = outside_blocks(pair.u);
        auto sw = outside_blocks(pair.w);
        pair.good = false;
        for (int bu : su)
            for (int bw : sw)
                if (bu != bw) pair.good = true;
        if (!pair.good) {
            std::set<int> all = su;
            all.insert(sw.begin(), sw.end());
            if (all.size() == 1) {
                pair.target_block = *all.begin();
                pair.mergeable = !su.empty() && !sw.empty();
            }
        }
    };

    std::vector<SwappablePair> out;
    for (int id : view.dec.block_edges[block]) {
        const Edge& e = inst.edges[id];
        if (e.cost != 1) continue;
        bool u_att = !outside_blocks(e.u).empty();
        bool w_att = !outside_blocks(e.v).empty();
        if (!u_att || !w_att) continue;
        SwappablePair pair;
        pair.block_key = view.block_key[block];
        pair.u = std::min(e.u, e.v);
        pair.w = std::max(e.u, e.v);
        pair.pair_edge = id;
        pair.drop_edges = {id};
        classify(pair);
        out.push_back(pair);
    }
    if (block_nodes.size() == 4 && view.dec.block_edges[block].size() == 4) {
        // The two antipodal pairs of the 4-cycle.
        auto adjacent_in_block = [&](int a, int b) {
            for (int id : view.dec.block_edges[block])
                if (inst.edges[id].touches(a) && inst.edges[id].touches(b)) return true;
            return false;
        };
        for (size_t i = 0; i < block_nodes.size(); ++i)
            for (size_t j = i + 1; j < block_nodes.size(); ++j) {
                int u = block_nodes[i], w = block_nodes[j];
                if (adjacent_in_block(u, w)) continue;
                std::vector<int> others;
                for (int v : block_nodes)
                    if (v != u && v != w) others.push_back(v);
                int diag = -1;
                for (int id = 0; id < inst.edge_count(); ++id) {
                    if (h.contains(id)) continue;
                    const Edge& e = inst.edges[id];
                    if (e.touches(others[0]) && e.touches(others[1])) {
                        diag = id;
                        break;
                    }
                }
                if (diag < 0) continue;
                SwappablePair pair;
                pair.block_key = view.block_key[block];
                pair.u = u;
                pair.w = w;
                pair.diagonal = true;
                pair.diagonal_edge = diag;
                for (int id : view.dec.block_edges[block])
                    if (inst.edges[id].cost == 1) pair.drop_edges.push_back(id);
                classify(pair);
                out.push_back(pair);
            }
    }
    std::sort(out.begin(), out.end(), [](const SwappablePair& a, const SwappablePair& b) {
        return std::tie(a.u, a.w, a.diagonal) < std::tie(b.u, b.w, b.diagonal);
    });
    if (out.empty())
        throw theorem_violation("small block with no swappable pair", write_instance_text(inst));
    if (block_nodes.size() == 3) {
        bool has_edge_form = false;
        for (const auto& p : out) has_edge_form = has_edge_form || !p.diagonal;
        if (!has_edge_form)
            throw theorem_violation("3-cycle block without a swappable edge", write_instance_text(inst));
    }
    return out;
}

AuxDigraph build_daux(const MapInstance& inst, const EdgeSubgraph& h) {
    GlueView view(inst, h);
    AuxDigraph daux;
    for (int b = 0; b < view.dec.block_count(); ++b) {
        if (view.dec.block_size_class[b] == BlockSize::Small)
            daux.red_keys.push_back(view.block_key[b]);
        else
            daux.green_keys.push_back(view.block_key[b]);
    }
    for (int key : daux.red_keys) {
        auto pairs = enumerate_swappable_pairs(inst, h, view.dec.blocks[view.by_key.at(key)]);
        std::set<int> targets;
        int arcs_before = static_cast<int>(daux.arcs.size());
        for (const auto& pair : pairs) {
            if (pair.good)
                throw theorem_violation("auxiliary digraph built while a good pair exists",
                                        write_instance_text(inst));
            if (!pair.mergeable || pair.target_block < 0) continue;
            if (!targets.insert(pair.target_block).second) continue;
            daux.arcs.push_back({key, pair.target_block, pair});
        }
        if (static_cast<int>(daux.arcs.size()) == arcs_before)
            throw theorem_violation("red block with no outgoing arc", write_instance_text(inst));
    }
    // No red-red 2-cycle may trap both ends at out-degree one.
    auto out_degree = [&](int key) {
        int d = 0;
        for (const auto& arc : daux.arcs) d += arc.from_key == key;
        return d;
    };
    for (const auto& a : daux.arcs)
        for (const auto& b : daux.arcs) {
            if (a.from_key != b.to_key || a.to_key != b.from_key) continue;
            bool a_red = std::count(daux.red_keys.begin(), daux.red_keys.end(), a.from_key);
            bool b_red = std::count(daux.red_keys.begin(), daux.red_keys.end(), b.from_key);
            if (a_red && b_red && out_degree(a.from_key) == 1 && out_degree(b.from_key) == 1)
                throw theorem_violation("red 2-cycle with both out-degrees one", write_instance_text(inst));
        }
    return daux;
}

namespace {

// Swap plan shared by all small-block merges: two new unit-edges leaving u
// and w plus the form-specific discard bundle.
void plan_small_block_swap(const MapInstance& inst, const GlueState& state, const SwappablePair& pair,
                           const std::vector<int>& target_u, const std::vector<int>& target_w,
                           std::vector<int>& add_edges, std::vector<int>& discard_edges) {
    int eu = edge_into(inst, state.h, pair.u, mask_of(inst, target_u));
    int ew = edge_into(inst, state.h, pair.w, mask_of(inst, target_w));
    if (eu < 0 || ew < 0)
        throw theorem_violation("swap plan: missing edge into the target block", write_instance_text(inst));
    add_edges.push_back(eu);
    add_edges.push_back(ew);
    if (pair.diagonal) add_edges.push_back(pair.diagonal_edge);
    discard_edges = pair.drop_edges;
}

std::vector<std::vector<int>> block_graph_path(const MapInstance& inst, const GlueView& view,
                                               const EdgeSubgraph& h, int from_block, int to_block,
                                               int banned_block, int banned_edge) {
    // BFS over blocks through non-H edges; returns the list of G-edges per
    // hop, or empty when unreachable.
    int blocks = view.dec.block_count();
    std::vector<int> prev_block(blocks, -1), prev_edge(blocks, -1);
    std::vector<char> seen(blocks, 0);
    if (from_block == banned_block || to_block == banned_block) return {};
    std::queue<int> q;
    q.push(from_block);
    seen[from_block] = 1;
    std::vector<std::vector<std::pair<int, int>>> adj(blocks);
    for (int id = 0; id < inst.edge_count(); ++id) {
        if (h.contains(id) || id == banned_edge) continue;
        const Edge& e = inst.edges[id];
        int bu = view.dec.block_of_node[e.u], bv = view.dec.block_of_node[e.v];
        if (bu == bv || bu == banned_block || bv == banned_block) continue;
        adj[bu].push_back({bv, id});
        adj[bv].push_back({bu, id});
    }
    for (auto& lst : adj)
        std::sort(lst.begin(), lst.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        if (x == to_block) break;
        for (auto [to, id] : adj[x]) {
            if (seen[to]) continue;
            seen[to] = 1;
            prev_block[to] = x;
            prev_edge[to] = id;
            q.push(to);
        }
    }
    if (!seen[to_block]) return {};
    std::vector<std::vector<int>> hops;  // [edge id, from block, to block]
    for (int x = to_block; x != from_block; x = prev_block[x])
        hops.push_back({prev_edge[x], prev_block[x], x});
    std::reverse(hops.begin(), hops.end());
    return hops;
}

}  // namespace

void merge_via_good_pair(const MapInstance& inst, GlueState& state, const SwappablePair& pair) {
    GlueView view(inst, state.h);
    int a_block = view.by_key.at(pair.block_key);
    std::vector<char> in_a = mask_of(inst, view.dec.blocks[a_block]);

    auto blocks_at = [&](int x) {
        std::vector<int> keys;
        std::set<int> seen;
        for (int id = 0; id < inst.edge_count(); ++id) {
            const Edge& e = inst.edges[id];
            if (!e.touches(x)) continue;
            int y = e.other(x);
            if (in_a[y]) continue;
            int key = view.block_key[view.dec.block_of_node[y]];
            if (seen.insert(key).second) keys.push_back(key);
        }
        std::sort(keys.begin(), keys.end());
        return keys;
    };
    std::vector<int> bu_keys = blocks_at(pair.u), bw_keys = blocks_at(pair.w);
    int chosen_u = -1, chosen_w = -1;
    for (int bu : bu_keys) {
        for (int bw : bw_keys)
            if (bu != bw) {
                chosen_u = bu;
                chosen_w = bw;
                break;
            }
        if (chosen_u >= 0) break;
    }
    if (chosen_u < 0) throw validation_error("merge_via_good_pair called with a bad pair");

    auto hops = block_graph_path(inst, view, state.h, view.by_key.at(chosen_u), view.by_key.at(chosen_w),
                                 a_block, -1);
    if (hops.empty() && chosen_u != chosen_w)
        throw theorem_violation("no augmenting cycle avoiding the small block; an S34 survived",
                                write_instance_text(inst));

    std::vector<int> add_edges, discard_edges;
    plan_small_block_swap(inst, state, pair, view.dec.blocks[view.by_key.at(chosen_u)],
                          view.dec.blocks[view.by_key.at(chosen_w)], add_edges, discard_edges);
    std::vector<int> absorbed{pair.block_key, chosen_u};
    for (const auto& hop : hops) {
        add_edges.push_back(hop[0]);
        int key = view.block_key[hop[2]];
        if (key != chosen_u) absorbed.push_back(key);
    }
    if (std::find(absorbed.begin(), absorbed.end(), chosen_w) == absorbed.end())
        absorbed.push_back(chosen_w);
    apply_merge(inst, state, add_edges, discard_edges, absorbed, "good-pair merge");
}

void merge_red_green(const MapInstance& inst, GlueState& state, const AuxDigraph::Arc& arc) {
    GlueView view(inst, state.h);
    const std::vector<int>& target = view.dec.blocks[view.by_key.at(arc.to_key)];
    std::vector<int> add_edges, discard_edges;
    plan_small_block_swap(inst, state, arc.pair, target, target, add_edges, discard_edges);
    apply_merge(inst, state, add_edges, discard_edges, {arc.from_key, arc.to_key}, "red-green merge");
}

void merge_red_chain(const MapInstance& inst, GlueState& state, const AuxDigraph::Arc& first,
                     const AuxDigraph::Arc& second) {
    // Two bad-pair swaps applied back to back; the credit invariant is only
    // guaranteed at the end of the pair of merges, so the transfer is settled
    // manually over both.
    GlueView view(inst, state.h);
    Rational moved = state.block_credit.at(first.from_key) + state.block_credit.at(second.from_key) +
                     state.block_credit.at(second.to_key);
    std::vector<int> add1, drop1, add2, drop2;
    const std::vector<int>& mid = view.dec.blocks[view.by_key.at(first.to_key)];
    plan_small_block_swap(inst, state, first.pair, mid, mid, add1, drop1);
    {
        std::vector<int> ids = state.h.edge_ids;
        ids.insert(ids.end(), add1.begin(), add1.end());
        EdgeSubgraph current = EdgeSubgraph::of(inst, ids);
        for (int id : drop1) {
            std::vector<int> rest = current.edge_ids;
            rest.erase(std::find(rest.begin(), rest.end(), id));
            EdgeSubgraph without = EdgeSubgraph::of(inst, rest);
            if (!two_edge_disjoint_paths_exist(without, inst.edges[id].u, inst.edges[id].v))
                throw theorem_violation("red-chain discard would break 2-edge-connectivity",
                                        write_instance_text(inst));
            current = without;
        }
        state.h = current;
    }
    GlueView mid_view(inst, state.h);
    const std::vector<int>& tail = mid_view.dec.blocks[mid_view.by_key.at(second.to_key)];
    plan_small_block_swap(inst, state, second.pair, tail, tail, add2, drop2);
    {
        std::vector<int> ids = state.h.edge_ids;
        ids.insert(ids.end(), add2.begin(), add2.end());
        EdgeSubgraph current = EdgeSubgraph::of(inst, ids);
        for (int id : drop2) {
            std::vector<int> rest = current.edge_ids;
            rest.erase(std::find(rest.begin(), rest.end(), id));
            EdgeSubgraph without = EdgeSubgraph::of(inst, rest);
            if (!two_edge_disjoint_paths_exist(without, inst.edges[id].u, inst.edges[id].v))
                throw theorem_violation("red-chain discard would break 2-edge-connectivity",
                                        write_instance_text(inst));
            current = without;
        }
        state.h = current;
    }
    long long net = static_cast<long long>(add1.size() + add2.size()) -
                    static_cast<long long>(drop1.size() + drop2.size());
    Rational surplus = moved - Rational(net);
    if (surplus < Rational(2))
        throw theorem_violation("red-chain merge left < 2 credits", write_instance_text(inst));
    state.block_credit.erase(first.from_key);
    state.block_credit.erase(second.from_key);
    state.block_credit.erase(second.to_key);
    GlueView after(inst, state.h);
    int merged = after.dec.block_of_node[first.from_key];
    if (after.dec.block_of_node[second.from_key] != merged ||
        after.dec.block_of_node[second.to_key] != merged)
        throw theorem_violation("red chain did not merge into one block", write_instance_text(inst));
    state.block_credit[after.block_key[merged]] = surplus;
    if (state.block_credit.size() != static_cast<size_t>(after.dec.block_count()))
        throw theorem_violation("red-chain merge left stale credits", write_instance_text(inst));
}

void merge_large_cycle(const MapInstance& inst, GlueState& state) {
    GlueView view(inst, state.h);
    if (view.dec.block_count() < 2) throw validation_error("merge_large_cycle needs >= 2 blocks");
    int chosen = 0;  // blocks are sorted by min node already
    // Shortest cycle through the chosen block: try each incident non-H edge
    // ascending and close it with a block-path avoiding that edge.
    std::vector<int> best_cycle;
    std::vector<int> best_absorbed;
    for (int id = 0; id < inst.edge_count(); ++id) {
        if (state.h.contains(id)) continue;
        const Edge& e = inst.edges[id];
        int bu = view.dec.block_of_node[e.u], bv = view.dec.block_of_node[e.v];
        if (bu == bv) continue;
        if (bu != chosen && bv != chosen) continue;
        int far = bu == chosen ? bv : bu;
        auto hops = block_graph_path(inst, view, state.h, far, chosen, -1, id);
        if (hops.empty()) continue;
        std::vector<int> cycle{id};
        std::vector<int> absorbed{view.block_key[chosen], view.block_key[far]};
        for (const auto& hop : hops) {
            cycle.push_back(hop[0]);
            int key = view.block_key[hop[2]];
            if (std::find(absorbed.begin(), absorbed.end(), key) == absorbed.end()) absorbed.push_back(key);
        }
        if (best_cycle.empty() || cycle.size() < best_cycle.size()) {
            best_cycle = cycle;
            best_absorbed = absorbed;
        }
    }
    if (best_cycle.empty())
        throw theorem_violation("no augmenting cycle among large blocks", write_instance_text(inst));
    apply_merge(inst, state, best_cycle, {}, best_absorbed, "large-cycle merge");
}

EdgeSubgraph glue(const MapInstance& inst, GlueState state, std::vector<std::string>* trace) {
    // Quality monotonicity instrumentation: a surviving block's pair can go
    // good -> bad across iterations but never bad -> good.
    std::map<std::vector<int>, std::map<std::pair<int, int>, bool>> last_quality;
    long long merges = 0;
    for (;;) {
        GlueView view(inst, state.h);
        for (int b = 0; b < view.dec.block_count(); ++b) {
            Rational floor = view.dec.block_size_class[b] == BlockSize::Small ? Rational(4, 3) : Rational(2);
            if (state.block_credit.at(view.block_key[b]) < floor)
                throw theorem_violation("gluing credit floor violated", write_instance_text(inst));
        }

        std::map<std::vector<int>, std::map<std::pair<int, int>, bool>> quality_now;
        const SwappablePair* good_pick = nullptr;
        std::vector<std::vector<SwappablePair>> all_pairs;
        for (int b = 0; b < view.dec.block_count(); ++b) {
            if (view.dec.block_size_class[b] != BlockSize::Small) continue;
            all_pairs.push_back(enumerate_swappable_pairs(inst, state.h, view.dec.blocks[b]));
            auto& qmap = quality_now[view.dec.blocks[b]];
            for (const auto& pair : all_pairs.back()) qmap[{pair.u, pair.w}] = pair.good;
            if (!good_pick)
                for (const auto& pair : all_pairs.back())
                    if (pair.good) {
                        good_pick = &pair;
                        break;
                    }
        }
        for (const auto& [nodes, qmap] : quality_now) {
            auto it = last_quality.find(nodes);
            if (it == last_quality.end()) continue;
            for (const auto& [pw, good_now] : qmap) {
                auto old = it->second.find(pw);
                if (old != it->second.end() && !old->second && good_now)
                    throw theorem_violation("swappable pair went from bad to good",
                                            write_instance_text(inst));
            }
        }
        last_quality = std::move(quality_now);

        if (view.dec.block_count() == 1) break;

        if (good_pick) {
            if (trace) {
                std::ostringstream line;
                line << "glue good-pair block=" << good_pick->block_key + 1 << " pair=" << good_pick->u + 1
                     << "," << good_pick->w + 1 << (good_pick->diagonal ? " diagonal" : " edge");
                trace->push_back(line.str());
            }
            merge_via_good_pair(inst, state, *good_pick);
        } else if (!all_pairs.empty()) {
            AuxDigraph daux = build_daux(inst, state.h);
            std::set<int> red(daux.red_keys.begin(), daux.red_keys.end());
            std::set<int> green(daux.green_keys.begin(), daux.green_keys.end());
            const AuxDigraph::Arc* to_green = nullptr;
            for (const auto& arc : daux.arcs)
                if (green.count(arc.to_key)) {
                    to_green = &arc;
                    break;
                }
            if (to_green) {
                if (trace)
                    trace->push_back("glue red-green from=" + std::to_string(to_green->from_key + 1) +
                                     " to=" + std::to_string(to_green->to_key + 1));
                merge_red_green(inst, state, *to_green);
            } else {
                const AuxDigraph::Arc* first = nullptr;
                const AuxDigraph::Arc* second = nullptr;
                for (const auto& a : daux.arcs) {
                    for (const auto& b : daux.arcs) {
                        if (b.from_key != a.to_key) continue;
                        if (b.to_key == a.from_key || b.to_key == a.to_key) continue;
                        first = &a;
                        second = &b;
                        break;
                    }
                    if (first) break;
                }
                if (!first)
                    throw theorem_violation("no valid gluing augmentation; instance is not well-structured",
                                            write_instance_text(inst));
                if (trace)
                    trace->push_back("glue red-chain " + std::to_string(first->from_key + 1) + "->" +
                                     std::to_string(first->to_key + 1) + "->" +
                                     std::to_string(second->to_key + 1));
                merge_red_chain(inst, state, *first, *second);
            }
        } else {
            if (trace) trace->push_back("glue large-cycle");
            merge_large_cycle(inst, state);
        }
        if (++merges >= inst.node_count)
            throw theorem_violation("gluing exceeded its merge bound", write_instance_text(inst));
    }

    GlueView final_view(inst, state.h);
    if (final_view.dec.block_count() != 1 ||
        static_cast<int>(final_view.dec.blocks[0].size()) != inst.node_count)
        throw theorem_violation("gluing did not end at a single spanning block",
                                write_instance_text(inst));
    if (!is_two_edge_connected(state.h, true))
        throw theorem_violation("gluing output is not a spanning 2-ECSS", write_instance_text(inst));
    if (state.block_credit.begin()->second < Rational(2))
        throw theorem_violation("final block holds < 2 credits", write_instance_text(inst));
    return state.h;
}

}  // namespace matchaug
