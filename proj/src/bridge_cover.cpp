#include "matchaug/bridge_cover.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <set>
#include <sstream>

#include "matchaug/errors.hpp"
#include "matchaug/io.hpp"

namespace matchaug {

namespace {

const Rational kThird{1, 3};
const Rational kTwoThirds{2, 3};

struct HView {
    BlockDecomposition dec;
    std::vector<std::vector<int>> components;     // sorted node lists
    std::vector<int> component_of;                // node -> component index
    std::vector<int> component_key;               // component -> min node
    std::vector<int> block_key;                   // block -> min node
    std::vector<int> deg1;                        // unit-bridge degree per node
    std::vector<int> block_bridge_count;          // incident bridges per block

    HView(const MapInstance& inst, const EdgeSubgraph& h) {
        dec = block_decomposition(h);
        components = connected_components(h, true);
        component_of.assign(inst.node_count, -1);
        for (int c = 0; c < static_cast<int>(components.size()); ++c) {
            component_key.push_back(components[c].front());
            for (int v : components[c]) component_of[v] = c;
        }
        for (const auto& blk : dec.blocks) block_key.push_back(blk.front());
        deg1.assign(inst.node_count, 0);
        block_bridge_count.assign(dec.block_count(), 0);
        for (int bid : dec.bridges) {
            const Edge& e = inst.edges[bid];
            if (e.cost == 1) {
                ++deg1[e.u];
                ++deg1[e.v];
            }
            int bu = dec.block_of_node[e.u], bv = dec.block_of_node[e.v];
            if (bu >= 0) ++block_bridge_count[bu];
            if (bv >= 0 && bv != bu) ++block_bridge_count[bv];
        }
    }

    long long unit_cost_of_block(const MapInstance& inst, int b) const {
        long long c = 0;
        for (int id : dec.block_edges[b]) c += inst.edges[id].cost;
        return c;
    }

    bool component_is_bridgeless(const MapInstance& inst, int c) const {
        for (int bid : dec.bridges) {
            if (component_of[inst.edges[bid].u] == c) return false;
        }
        return true;
    }
};

}  // namespace

Rational CreditState::total() const {
    Rational t;
    for (const auto& [k, v] : c_credit) t += v;
    for (const auto& [k, v] : b_credit) t += v;
    for (const auto& v : n_credit) t += v;
    return t;
}

void check_credit_invariant(const MapInstance& inst, const EdgeSubgraph& h, const CreditState& credits) {
    HView view(inst, h);
    auto fail = [&](const std::string& why) {
        throw theorem_violation("credit invariant violated: " + why, write_instance_text(inst));
    };
    for (int c = 0; c < static_cast<int>(view.components.size()); ++c) {
        auto it = credits.c_credit.find(view.component_key[c]);
        if (it == credits.c_credit.end() || it->second < Rational(1))
            fail("component lacks a full c-credit");
    }
    if (credits.c_credit.size() != view.components.size()) fail("stale component c-credits");
    for (int b = 0; b < view.dec.block_count(); ++b) {
        auto it = credits.b_credit.find(view.block_key[b]);
        if (it == credits.b_credit.end()) fail("block lacks a b-credit entry");
        int comp = view.component_of[view.dec.blocks[b].front()];
        bool whole_component = view.components[comp].size() == view.dec.blocks[b].size() &&
                               view.component_is_bridgeless(inst, comp);
        if (whole_component && view.dec.block_size_class[b] == BlockSize::Small) {
            if (it->second != kThird) fail("small-block component must hold exactly 1/3 b-credit");
        } else if (it->second < Rational(1)) {
            fail("block holds less than one b-credit");
        }
    }
    if (credits.b_credit.size() != static_cast<size_t>(view.dec.block_count())) fail("stale block b-credits");
    for (int v = 0; v < inst.node_count; ++v) {
        bool black = view.dec.node_color[v] == NodeColor::Black && !view.components.empty();
        Rational expected = black ? Rational(view.deg1[v], 3) : Rational(0);
        if (credits.n_credit[v] != expected) fail("black-node n-credit does not match deg^1/3");
    }
}

BridgeState init_credits(const MapInstance& inst, const D2Result& d2) {
    if (!d2.normalized || !satisfies_d2_normal_form(inst, d2.cover))
        throw validation_error("init_credits requires a normalized D2");
    BridgeState state;
    state.h = d2.cover;
    state.d2_cost = d2.cover.cost;
    HView view(inst, state.h);

    CreditState& cr = state.credits;
    cr.n_credit.assign(inst.node_count, Rational(0));
    cr.unit_bridge_degree = view.deg1;

    // Unit-bridges hand 1/3 to each end; black ends keep it as n-credit,
    // white ends stash it with their block.
    std::vector<Rational> block_base(view.dec.block_count(), Rational(0));
    for (int b = 0; b < view.dec.block_count(); ++b)
        block_base[b] = kTwoThirds * Rational(view.unit_cost_of_block(inst, b));
    for (int v = 0; v < inst.node_count; ++v) {
        if (view.deg1[v] == 0) continue;
        Rational stub = Rational(view.deg1[v], 3);
        if (view.dec.node_color[v] == NodeColor::Black)
            cr.n_credit[v] = stub;
        else
            block_base[view.dec.block_of_node[v]] += stub;
    }

    for (int c = 0; c < static_cast<int>(view.components.size()); ++c) {
        std::vector<int> blocks_here;
        for (int b = 0; b < view.dec.block_count(); ++b)
            if (view.component_of[view.dec.blocks[b].front()] == c) blocks_here.push_back(b);
        bool bridgeless = view.component_is_bridgeless(inst, c);
        int key = view.component_key[c];
        if (bridgeless) {
            if (blocks_here.size() != 1)
                throw theorem_violation("bridgeless component is not a single block",
                                        write_instance_text(inst));
            cr.c_credit[key] = Rational(1);
            block_base[blocks_here[0]] -= Rational(1);
            continue;
        }
        int large = -1;
        for (int b : blocks_here)
            if (view.dec.block_size_class[b] == BlockSize::Large) {
                large = b;
                break;
            }
        if (large >= 0) {
            cr.c_credit[key] = Rational(1);
            block_base[large] -= Rational(1);
        } else if (blocks_here.size() >= 3) {
            cr.c_credit[key] = Rational(1);
            for (int i = 0; i < 3; ++i) block_base[blocks_here[i]] -= kThird;
        } else if (blocks_here.size() == 2) {
            // Both blocks are pendant and small; the normal form makes their
            // bridges unit-bridges, so each block banked a 1/3 stub above.
            cr.c_credit[key] = Rational(1);
            block_base[blocks_here[0]] -= kTwoThirds;
            block_base[blocks_here[1]] -= kThird;
        } else {
            throw theorem_violation("bridged component with fewer than two blocks",
                                    write_instance_text(inst));
        }
    }
    for (int b = 0; b < view.dec.block_count(); ++b) cr.b_credit[view.block_key[b]] = block_base[b];

    long long unit_cost = state.h.cost;
    if (cr.total() + Rational(0) != kTwoThirds * Rational(unit_cost))
        throw theorem_violation("initial credits do not total 2/3 of cost(D2)", write_instance_text(inst));
    check_credit_invariant(inst, state.h, cr);
    return state;
}

PseudoEar find_pseudo_ear(const MapInstance& inst, const EdgeSubgraph& h,
                          const std::vector<int>& component_nodes, const std::vector<int>& pendant_block) {
    HView view(inst, h);
    std::vector<char> in_c0(inst.node_count, 0);
    for (int v : component_nodes) in_c0[v] = 1;
    std::vector<char> in_r(inst.node_count, 0);
    for (int v : pendant_block) in_r[v] = 1;

    // The unique bridge of C_0 incident to R.
    int bridge = -1, r = -1, u = -1;
    for (int bid : view.dec.bridges) {
        const Edge& e = inst.edges[bid];
        if (in_r[e.u] && !in_r[e.v] && in_c0[e.v]) {
            bridge = bid;
            r = e.u;
            u = e.v;
        } else if (in_r[e.v] && !in_r[e.u] && in_c0[e.u]) {
            bridge = bid;
            r = e.v;
            u = e.u;
        }
    }
    if (bridge < 0) throw validation_error("find_pseudo_ear: block is not pendant in its component");

    // Exclusion set Z per the bridge-end case analysis.
    std::vector<int> z;
    if (view.dec.node_color[u] == NodeColor::Black) {
        if (view.deg1[u] >= 2) {
            z = {u};
        } else {
            int w = -1;
            for (int id : h.edge_ids) {
                const Edge& e = inst.edges[id];
                if (e.touches(u) && id != bridge) w = e.other(u);
            }
            if (w < 0 || w == r)
                throw theorem_violation("black bridge end without a second neighbour",
                                        write_instance_text(inst));
            bool w_light = view.dec.node_color[w] == NodeColor::Black && view.deg1[w] == 1;
            z = w_light ? std::vector<int>{u, w} : std::vector<int>{u};
        }
    }

    std::vector<char> blocked(inst.node_count, 0);
    for (int v : z) blocked[v] = 1;

    // BFS over C_0's own nodes plus one synthetic node per other component,
    // over the edges of G - E(C_0) - Z.
    int comp_c0 = view.component_of[component_nodes.front()];
    int total = inst.node_count + static_cast<int>(view.components.size());
    auto map_node = [&](int v) { return in_c0[v] ? v : inst.node_count + view.component_of[v]; };
    std::vector<std::vector<std::pair<int, int>>> adj(total);  // (mapped to, edge id)
    for (int id = 0; id < inst.edge_count(); ++id) {
        const Edge& e = inst.edges[id];
        if (in_c0[e.u] && in_c0[e.v] && h.contains(id)) continue;  // E(C_0)
        if (blocked[e.u] || blocked[e.v]) continue;
        int mu = map_node(e.u), mv = map_node(e.v);
        if (mu == mv) continue;
        adj[mu].push_back({mv, id});
        adj[mv].push_back({mu, id});
    }
    for (auto& lst : adj)
        std::sort(lst.begin(), lst.end(), [](const auto& a, const auto& b) { return a.second < b.second; });

    std::vector<int> prev_edge(total, -1), prev_node(total, -1);
    std::vector<char> seen(total, 0);
    std::queue<int> q;
    for (int v : pendant_block) {
        seen[v] = 1;
        q.push(v);
    }
    int head = -1;
    while (!q.empty() && head < 0) {
        int x = q.front();
        q.pop();
        for (auto [to, id] : adj[x]) {
            if (seen[to]) continue;
            seen[to] = 1;
            prev_edge[to] = id;
            prev_node[to] = x;
            if (to < inst.node_count && in_c0[to] && !in_r[to]) {
                head = to;
                break;
            }
            q.push(to);
        }
    }
    if (head < 0)
        throw theorem_violation("no pseudo-ear exists; instance cannot be well-structured",
                                write_instance_text(inst));

    PseudoEar ear;
    ear.r = r;
    ear.bridge_over = bridge;
    ear.head = head;
    for (int x = head; prev_node[x] != -1; x = prev_node[x]) {
        ear.path_edges.push_back(prev_edge[x]);
        if (x >= inst.node_count) ear.through_components.push_back(view.component_key[x - inst.node_count]);
    }
    std::reverse(ear.path_edges.begin(), ear.path_edges.end());
    std::reverse(ear.through_components.begin(), ear.through_components.end());
    (void)comp_c0;

    // Witness path: BFS inside C_0 (H-edges only) from r to the head.
    std::vector<std::vector<std::pair<int, int>>> cadj(inst.node_count);
    for (int id : h.edge_ids) {
        const Edge& e = inst.edges[id];
        if (!in_c0[e.u] || !in_c0[e.v]) continue;
        cadj[e.u].push_back({e.v, id});
        cadj[e.v].push_back({e.u, id});
    }
    for (auto& lst : cadj)
        std::sort(lst.begin(), lst.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<int> wprev_edge(inst.node_count, -1), wprev_node(inst.node_count, -1);
    std::vector<char> wseen(inst.node_count, 0);
    std::queue<int> wq;
    wq.push(r);
    wseen[r] = 1;
    while (!wq.empty()) {
        int x = wq.front();
        wq.pop();
        if (x == head) break;
        for (auto [to, id] : cadj[x]) {
            if (wseen[to]) continue;
            wseen[to] = 1;
            wprev_edge[to] = id;
            wprev_node[to] = x;
            wq.push(to);
        }
    }
    assert(wseen[head]);
    for (int x = head; x != r; x = wprev_node[x]) {
        ear.witness_nodes.push_back(x);
        ear.witness_edges.push_back(wprev_edge[x]);
    }
    ear.witness_nodes.push_back(r);
    std::reverse(ear.witness_nodes.begin(), ear.witness_nodes.end());
    std::reverse(ear.witness_edges.begin(), ear.witness_edges.end());
    // With a nonempty exclusion set the head lies beyond the bridge end, so
    // every witness path has at least two edges.
    if (!z.empty() && ear.witness_edges.size() < 2)
        throw theorem_violation("witness path shorter than the exclusion set permits",
                                write_instance_text(inst));
    return ear;
}

WitnessCredit witness_credit(const MapInstance& inst, const EdgeSubgraph& h, const CreditState& credits,
                             const std::vector<int>& witness_nodes, const std::vector<int>& witness_edges) {
    HView view(inst, h);
    int r = witness_nodes.front();
    for (size_t i = 1; i < witness_nodes.size(); ++i) {
        int v = witness_nodes[i];
        if (view.dec.node_color[v] == NodeColor::White) {
            int key = view.block_key[view.dec.block_of_node[v]];
            Rational amount = credits.b_credit.at(key);
            if (amount < Rational(1))
                throw theorem_violation("witness white node's block holds < 1 b-credit",
                                        write_instance_text(inst));
            return {WitnessCase::WhiteNode, amount};
        }
    }
    std::vector<char> is_bridge(inst.edge_count(), 0);
    for (int bid : view.dec.bridges) is_bridge[bid] = 1;
    int bridge_count = 0;
    for (int id : witness_edges) bridge_count += is_bridge[id];
    Rational released;
    for (size_t i = 1; i < witness_nodes.size(); ++i) released += credits.n_credit[witness_nodes[i]];
    if (bridge_count >= 3) {
        if (released < Rational(1))
            throw theorem_violation("three-bridge witness path releases < 1", write_instance_text(inst));
        return {WitnessCase::ThreeBridges, released};
    }
    if (bridge_count == 2) {
        bool heavy = false;
        for (size_t i = 1; i < witness_nodes.size(); ++i)
            if (view.deg1[witness_nodes[i]] >= 2) heavy = true;
        if (heavy && released >= Rational(1)) return {WitnessCase::TwoBridgesHeavyNode, released};
    }
    (void)r;
    throw theorem_violation("witness path satisfies no release condition", write_instance_text(inst));
}

void apply_pseudo_ear(const MapInstance& inst, BridgeState& state, const PseudoEar& ear) {
    HView before(inst, state.h);
    Rational total_before = state.credits.total();
    long long cost_before = state.h.cost;

    WitnessCredit release =
        witness_credit(inst, state.h, state.credits, ear.witness_nodes, ear.witness_edges);
    (void)release;  // the release check must pass; payment below is by conservation

    std::vector<int> ids = state.h.edge_ids;
    for (int id : ear.path_edges) {
        if (state.h.contains(id) || inst.edges[id].cost != 1)
            throw theorem_violation("pseudo-ear edge is not a new unit-edge", write_instance_text(inst));
        ids.push_back(id);
    }
    EdgeSubgraph next = EdgeSubgraph::of(inst, ids);
    HView after(inst, next);

    // The ear's edges all lie on the new cycle, hence inside one block.
    for (int id : ear.path_edges)
        if (std::binary_search(after.dec.bridges.begin(), after.dec.bridges.end(), id))
            throw theorem_violation("pseudo-ear edge remained a bridge", write_instance_text(inst));
    int rnew = after.dec.block_of_node[ear.r];
    assert(rnew >= 0);
    for (int v : ear.witness_nodes) assert(after.dec.block_of_node[v] == rnew);

    CreditState next_credits;
    next_credits.n_credit.assign(inst.node_count, Rational(0));
    next_credits.unit_bridge_degree = after.deg1;

    Rational pool;
    // Components: the merged one keeps C_0's credit; the absorbed ones pay.
    int merged_comp = after.component_of[ear.r];
    int old_c0 = before.component_of[ear.r];
    for (int c = 0; c < static_cast<int>(after.components.size()); ++c) {
        int key = after.component_key[c];
        if (c == merged_comp)
            next_credits.c_credit[key] = state.credits.c_credit.at(before.component_key[old_c0]);
        else
            next_credits.c_credit[key] = state.credits.c_credit.at(key);
    }
    for (int key : ear.through_components) pool += state.credits.c_credit.at(key);

    // Blocks: unchanged blocks carry over; everything absorbed into R^new
    // (including R's own credit) lands in the pool.
    std::set<std::vector<int>> new_block_sets(after.dec.blocks.begin(), after.dec.blocks.end());
    std::vector<char> in_rnew(inst.node_count, 0);
    for (int v : after.dec.blocks[rnew]) in_rnew[v] = 1;
    for (int b = 0; b < before.dec.block_count(); ++b) {
        const auto& nodes = before.dec.blocks[b];
        Rational credit = state.credits.b_credit.at(before.block_key[b]);
        if (new_block_sets.count(nodes)) {
            next_credits.b_credit[before.block_key[b]] = credit;
        } else {
            bool absorbed = true;
            for (int v : nodes) absorbed = absorbed && in_rnew[v];
            if (!absorbed)
                throw theorem_violation("a block changed without being absorbed", write_instance_text(inst));
            pool += credit;
        }
    }
    // Nodes that turned white release their n-credits into the pool.
    for (int v = 0; v < inst.node_count; ++v) {
        if (state.credits.n_credit[v] == Rational(0)) continue;
        if (after.dec.node_color[v] == NodeColor::Black) {
            if (after.deg1[v] != before.deg1[v])
                throw theorem_violation("unit-bridge degree changed at a black node",
                                        write_instance_text(inst));
            next_credits.n_credit[v] = state.credits.n_credit[v];
        } else {
            pool += state.credits.n_credit[v];
        }
    }

    pool -= Rational(static_cast<long long>(ear.path_edges.size()));
    Rational rnew_credit = pool;
    if (rnew_credit < Rational(1))
        throw theorem_violation("pseudo-ear payment left the new block under one credit",
                                write_instance_text(inst));
    next_credits.b_credit[after.block_key[rnew]] = rnew_credit;

    state.h = next;
    state.credits = std::move(next_credits);

    if (state.credits.total() + Rational(state.h.cost) != total_before + Rational(cost_before))
        throw theorem_violation("credit ledger is not conserved", write_instance_text(inst));
    check_credit_invariant(inst, state.h, state.credits);
    if (Rational(state.h.cost) + state.credits.total() != Rational(5 * state.d2_cost, 3))
        throw theorem_violation("cost(H) + credit drifted from 5/3 cost(D2)", write_instance_text(inst));
}

BridgeCoverResult bridge_cover(const MapInstance& inst, const D2Result& d2,
                               std::vector<std::string>* trace) {
    BridgeState state = init_credits(inst, d2);
    long long iterations = 0;
    long long bound = static_cast<long long>(d2.cover.edge_ids.size());
    size_t prev_bridges = find_bridges(state.h).size();
    while (true) {
        HView view(inst, state.h);
        if (view.dec.bridges.empty()) break;
        // Least component with a bridge, then its least pendant block.
        int comp = -1;
        for (int c = 0; c < static_cast<int>(view.components.size()); ++c) {
            if (!view.component_is_bridgeless(inst, c)) {
                comp = c;
                break;
            }
        }
        int pendant = -1;
        for (int b = 0; b < view.dec.block_count(); ++b) {
            if (view.component_of[view.dec.blocks[b].front()] != comp) continue;
            if (view.block_bridge_count[b] == 1) {
                pendant = b;
                break;
            }
        }
        if (pendant < 0)
            throw theorem_violation("bridged component without a pendant block",
                                    write_instance_text(inst));
        PseudoEar ear = find_pseudo_ear(inst, state.h, view.components[comp], view.dec.blocks[pendant]);
        if (trace) {
            WitnessCredit wc =
                witness_credit(inst, state.h, state.credits, ear.witness_nodes, ear.witness_edges);
            std::ostringstream line;
            line << "ear component=" << view.component_key[comp] + 1
                 << " block=" << view.dec.blocks[pendant].front() + 1 << " k=" << ear.path_edges.size()
                 << " case="
                 << (wc.which == WitnessCase::WhiteNode
                         ? "white-node"
                         : wc.which == WitnessCase::ThreeBridges ? "three-bridges" : "two-bridges-heavy")
                 << " released=" << wc.amount.str()
                 << " paid=" << ear.path_edges.size();
            trace->push_back(line.str());
        }
        apply_pseudo_ear(inst, state, ear);
        ++iterations;
        size_t now_bridges = find_bridges(state.h).size();
        if (now_bridges >= prev_bridges)
            throw theorem_violation("bridge count failed to decrease", write_instance_text(inst));
        prev_bridges = now_bridges;
        if (iterations > bound)
            throw theorem_violation("bridge covering exceeded its iteration bound",
                                    write_instance_text(inst));
    }

    BridgeCoverResult result;
    result.h = state.h;
    result.d2_cost = state.d2_cost;
    result.iterations = iterations;
    HView view(inst, state.h);
    for (int b = 0; b < view.dec.block_count(); ++b) {
        int key = view.block_key[b];
        Rational credit = state.credits.c_credit.at(key) + state.credits.b_credit.at(key);
        Rational floor = view.dec.block_size_class[b] == BlockSize::Small ? Rational(4, 3) : Rational(2);
        if (credit < floor)
            throw theorem_violation("final block credit below its floor", write_instance_text(inst));
        result.block_credit[key] = credit;
    }
    return result;
}

}  // namespace matchaug
