#include "matchaug/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <functional>

#include "matchaug/errors.hpp"

namespace matchaug {

namespace {

using Clock = std::chrono::steady_clock;

struct SearchLimits {
    Clock::time_point deadline;
    long long visits_left;

    explicit SearchLimits(const OracleBudget& b)
        : deadline(Clock::now() + std::chrono::milliseconds(b.max_millis)), visits_left(b.node_visit_cap) {}

    void tick() {
        if (--visits_left < 0 || (visits_left % 4096 == 0 && Clock::now() > deadline))
            throw budget_exceeded("oracle search budget exceeded");
    }
};

// Branch and bound over unit-edges shared by the 2-ECSS and 2-edge-cover
// oracles. `need_2ec` toggles the connectivity requirements on candidates.
struct ExactSearch {
    const MapInstance& inst;
    bool need_2ec;
    SearchLimits limits;

    std::vector<int> unit_ids;
    std::vector<int> zero_ids;
    std::vector<char> chosen;    // per edge id
    std::vector<char> excluded;  // per edge id
    std::vector<int> deg_cur;    // degree in chosen + zeros
    std::vector<int> deg_avail;  // degree in chosen + zeros + undecided units
    long long chosen_cost = 0;

    long long best_cost;
    std::vector<int> best_set;

    ExactSearch(const MapInstance& g, bool two_ec, const OracleBudget& budget)
        : inst(g), need_2ec(two_ec), limits(budget) {
        if (inst.node_count > budget.max_nodes)
            throw budget_exceeded("instance has " + std::to_string(inst.node_count) +
                                  " nodes, oracle budget allows " + std::to_string(budget.max_nodes));
        unit_ids = inst.unit_edges();
        zero_ids = inst.zero_edges();
        chosen.assign(inst.edge_count(), 0);
        excluded.assign(inst.edge_count(), 0);
        deg_cur.assign(inst.node_count, 0);
        deg_avail.assign(inst.node_count, 0);
        for (int id : zero_ids) {
            ++deg_cur[inst.edges[id].u];
            ++deg_cur[inst.edges[id].v];
        }
        deg_avail = deg_cur;
        for (int id : unit_ids) {
            ++deg_avail[inst.edges[id].u];
            ++deg_avail[inst.edges[id].v];
        }
        best_cost = static_cast<long long>(unit_ids.size()) + 1;
    }

    std::vector<int> current_edges(bool with_undecided) const {
        std::vector<int> ids = zero_ids;
        for (int id : unit_ids)
            if (chosen[id] || (with_undecided && !excluded[id])) ids.push_back(id);
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    bool candidate_feasible(const std::vector<int>& ids) const {
        EdgeSubgraph sub = EdgeSubgraph::of(inst, ids);
        if (!need_2ec) {
            for (int v = 0; v < inst.node_count; ++v) {
                int d = 0;
                for (int id : ids)
                    if (inst.edges[id].touches(v)) ++d;
                if (d < 2) return false;
            }
            return true;
        }
        return is_two_edge_connected(sub, true);
    }

    // Lowest-id undecided unit edge the search should branch on, or -1 when
    // chosen + zeros is already feasible.
    int pick_branch_edge() {
        for (int v = 0; v < inst.node_count; ++v) {
            if (deg_cur[v] >= 2) continue;
            for (int id : unit_ids)
                if (!chosen[id] && !excluded[id] && inst.edges[id].touches(v)) return id;
            assert(false && "deficient node with no available edge survived pruning");
        }
        std::vector<int> ids = current_edges(false);
        EdgeSubgraph sub = EdgeSubgraph::of(inst, ids);
        if (!need_2ec) return -1;
        auto comps = connected_components(sub, true);
        if (comps.size() > 1) {
            const std::vector<int>& side = comps[0];
            return lowest_crossing_edge(side);
        }
        std::vector<int> bridges = find_bridges(sub);
        if (bridges.empty()) return -1;
        // Split along the first bridge; any completion needs a second edge
        // across this cut.
        int b = bridges[0];
        std::vector<int> rest = ids;
        rest.erase(std::find(rest.begin(), rest.end(), b));
        auto parts = connected_components(EdgeSubgraph::of(inst, rest), true);
        for (const auto& side : parts)
            if (std::find(side.begin(), side.end(), inst.edges[b].u) != side.end())
                return lowest_crossing_edge(side);
        assert(false);
        return -1;
    }

    int lowest_crossing_edge(const std::vector<int>& side) {
        std::vector<char> in_side(inst.node_count, 0);
        for (int v : side) in_side[v] = 1;
        for (int id : unit_ids) {
            if (chosen[id] || excluded[id]) continue;
            if (in_side[inst.edges[id].u] != in_side[inst.edges[id].v]) return id;
        }
        return -2;  // no crossing edge left: infeasible branch
    }

    void dfs() {
        limits.tick();
        if (chosen_cost >= best_cost) return;
        int deficient = 0;
        for (int v = 0; v < inst.node_count; ++v) {
            if (deg_avail[v] < 2) return;
            if (deg_cur[v] < 2) ++deficient;
        }
        if (chosen_cost + (deficient + 1) / 2 >= best_cost) return;
        if (need_2ec && !is_two_edge_connected(EdgeSubgraph::of(inst, current_edges(true)), true)) return;

        int e = pick_branch_edge();
        if (e == -2) return;
        if (e == -1) {
            std::vector<int> ids = current_edges(false);
            assert(candidate_feasible(ids));
            best_cost = chosen_cost;
            best_set = std::move(ids);
            return;
        }
        const Edge& edge = inst.edges[e];
        chosen[e] = 1;
        ++deg_cur[edge.u];
        ++deg_cur[edge.v];
        chosen_cost += 1;
        dfs();
        chosen[e] = 0;
        --deg_cur[edge.u];
        --deg_cur[edge.v];
        chosen_cost -= 1;

        excluded[e] = 1;
        --deg_avail[edge.u];
        --deg_avail[edge.v];
        dfs();
        excluded[e] = 0;
        ++deg_avail[edge.u];
        ++deg_avail[edge.v];
    }

    OracleSolution run() {
        dfs();
        if (best_set.empty() && best_cost > static_cast<long long>(unit_ids.size()))
            throw validation_error(need_2ec ? "opt_2ecss: instance has no spanning 2EC subgraph"
                                            : "min_2edge_cover: instance has no 2-edge cover");
        OracleSolution sol;
        sol.cost = best_cost;
        sol.witness = EdgeSubgraph::of(inst, best_set);
        assert(sol.witness.cost == sol.cost);
        return sol;
    }
};

}  // namespace

OracleSolution opt_2ecss(const MapInstance& inst, const OracleBudget& budget) {
    ExactSearch search(inst, true, budget);
    return search.run();
}

bool opt_at_least(const MapInstance& inst, long long z, const OracleBudget& budget) {
    if (inst.node_count >= 2 * z) return true;
    return opt_2ecss(inst, budget).cost >= z;
}

OracleSolution min_2edge_cover(const MapInstance& inst, const OracleBudget& budget) {
    std::vector<int> deg(inst.node_count, 0);
    for (const Edge& e : inst.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    for (int v = 0; v < inst.node_count; ++v)
        if (deg[v] < 2)
            throw validation_error("min_2edge_cover: node " + std::to_string(v + 1) + " has degree < 2");
    ExactSearch search(inst, false, budget);
    return search.run();
}

const char* obstruction_kind_name(ObstructionKind kind) {
    switch (kind) {
        case ObstructionKind::CutNode: return "cut-node";
        case ObstructionKind::ParallelEdges: return "parallel-edges";
        case ObstructionKind::ZeroCostS2: return "zero-cost-s2";
        case ObstructionKind::UnitCostS2: return "unit-cost-s2";
        case ObstructionKind::S34: return "s34";
        case ObstructionKind::R4: return "r4";
        case ObstructionKind::R8: return "r8";
    }
    return "?";
}

namespace {

int components_without(const MapInstance& inst, const std::vector<int>& removed) {
    std::vector<char> gone(inst.node_count, 0);
    for (int v : removed) gone[v] = 1;
    std::vector<int> keep;
    for (int id = 0; id < inst.edge_count(); ++id)
        if (!gone[inst.edges[id].u] && !gone[inst.edges[id].v]) keep.push_back(id);
    auto comps = connected_components(EdgeSubgraph::of(inst, keep), true);
    int count = 0;
    for (const auto& comp : comps) {
        if (comp.size() == 1 && gone[comp[0]]) continue;
        ++count;
    }
    return count;
}

// Distinct 2ec-v-blocks at the contracted node, each holding a zero-edge on
// v_hat, each with opt >= 3: the shared side-condition of the S2 kinds.
bool s2_side_conditions(const MapInstance& inst, int u, int v, const OracleBudget& budget,
                        bool require_zero_edges) {
    ContractionResult contracted = contract(inst, {u, v});
    int vhat = contracted.contracted_node;
    std::vector<InducedSubInstance> blocks;
    try {
        blocks = two_ec_v_blocks(contracted.quotient, vhat);
    } catch (const validation_error&) {
        return false;
    }
    std::vector<int> eligible;
    for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
        const InducedSubInstance& blk = blocks[i];
        if (require_zero_edges) {
            bool zero_at_vhat = false;
            for (int j = 0; j < blk.graph.edge_count(); ++j) {
                const Edge& e = blk.graph.edges[j];
                if (e.cost == 0 && (blk.nodes[e.u] == vhat || blk.nodes[e.v] == vhat)) zero_at_vhat = true;
            }
            if (!zero_at_vhat) continue;
        }
        if (opt_at_least(blk.graph, 3, budget)) eligible.push_back(i);
        if (eligible.size() >= 2) return true;
    }
    return false;
}

// Hamiltonian cycles of an induced carrier with <= 4 nodes, by brute force;
// returns the minimum cost or -1 when none exists.
long long min_spanning_cycle_cost(const MapInstance& inst, const std::vector<int>& nodes) {
    int k = static_cast<int>(nodes.size());
    if (k < 3) return -1;
    std::vector<std::vector<long long>> w(k, std::vector<long long>(k, -1));
    std::vector<int> local(inst.node_count, -1);
    for (int i = 0; i < k; ++i) local[nodes[i]] = i;
    for (const Edge& e : inst.edges) {
        int a = local[e.u], b = local[e.v];
        if (a < 0 || b < 0) continue;
        if (w[a][b] < 0 || e.cost < w[a][b]) w[a][b] = w[b][a] = e.cost;
    }
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    long long best = -1;
    do {
        if (perm[0] != 0) break;  // fix the rotation
        long long c = 0;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            int a = perm[i], b = perm[(i + 1) % k];
            if (w[a][b] < 0)
                ok = false;
            else
                c += w[a][b];
        }
        if (ok && (best < 0 || c < best)) best = c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<int> attachments_of(const MapInstance& inst, const std::vector<int>& nodes) {
    std::vector<char> in_set(inst.node_count, 0);
    for (int v : nodes) in_set[v] = 1;
    std::vector<char> att(inst.node_count, 0);
    for (const Edge& e : inst.edges) {
        if (in_set[e.u] && !in_set[e.v]) att[e.u] = 1;
        if (in_set[e.v] && !in_set[e.u]) att[e.v] = 1;
    }
    std::vector<int> out;
    for (int v : nodes)
        if (att[v]) out.push_back(v);
    return out;
}

bool has_edge_between(const MapInstance& inst, int x, const std::vector<int>& set) {
    std::vector<char> in_set(inst.node_count, 0);
    for (int v : set) in_set[v] = 1;
    for (const Edge& e : inst.edges) {
        if (e.u == x && in_set[e.v]) return true;
        if (e.v == x && in_set[e.u]) return true;
    }
    return false;
}

// All Hamiltonian cycles of cost two on exactly 4 carrier nodes, as edge-id
// quadruples (lowest-id edge picked per consecutive pair).
std::vector<std::vector<int>> cost_two_four_cycles(const MapInstance& inst, const std::vector<int>& nodes) {
    std::vector<std::vector<int>> out;
    if (nodes.size() != 4) return out;
    int orders[3][4] = {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}};
    for (auto& order : orders) {
        long long c = 0;
        std::vector<int> cyc;
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            int a = nodes[order[i]], b = nodes[order[(i + 1) % 4]];
            int pick = -1;
            for (int id = 0; id < inst.edge_count(); ++id) {
                const Edge& e = inst.edges[id];
                if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
                    if (pick < 0 || e.cost < inst.edges[pick].cost) pick = id;
                }
            }
            if (pick < 0)
                ok = false;
            else {
                c += inst.edges[pick].cost;
                cyc.push_back(pick);
            }
        }
        if (ok && c == 2) out.push_back(cyc);
    }
    return out;
}

bool r8_by_definition(const MapInstance& inst, const std::vector<int>& nodes, const OracleBudget&) {
    if (nodes.size() != 8 || static_cast<int>(nodes.size()) >= inst.node_count) return false;
    std::vector<int> att = attachments_of(inst, nodes);
    if (att.size() != 2) return false;
    std::vector<int> idx(8);
    for (int i = 0; i < 8; ++i) idx[i] = i;
    // Split the carrier into two 4-sets, each spanned by a cost-two cycle.
    std::vector<int> comb{0, 1, 2, 3};
    std::vector<std::vector<int>> splits;
    std::vector<int> sel(8, 0);
    std::function<void(int, int)> gen = [&](int start, int depth) {
        if (depth == 4) {
            std::vector<int> a, b;
            for (int i = 0; i < 8; ++i) (sel[i] ? a : b).push_back(nodes[i]);
            if (a[0] == nodes[0]) splits.push_back(a);  // canonical halves
            return;
        }
        for (int i = start; i < 8; ++i) {
            sel[i] = 1;
            gen(i + 1, depth + 1);
            sel[i] = 0;
        }
    };
    gen(0, 0);
    for (const auto& half : splits) {
        std::vector<int> other;
        std::vector<char> in_half(inst.node_count, 0);
        for (int v : half) in_half[v] = 1;
        for (int v : nodes)
            if (!in_half[v]) other.push_back(v);
        auto cycles1 = cost_two_four_cycles(inst, half);
        auto cycles2 = cost_two_four_cycles(inst, other);
        if (cycles1.empty() || cycles2.empty()) continue;
        int a1 = -1, a2 = -1;
        for (int v : att) {
            if (in_half[v])
                a1 = (a1 < 0 ? v : -2);
            else
                a2 = (a2 < 0 ? v : -2);
        }
        if (a1 < 0 || a2 < 0) continue;
        auto side_ok = [&](const std::vector<std::vector<int>>& cycles, int a, const std::vector<int>& opposite) {
            for (const auto& cyc : cycles) {
                int unit_edge = -1;
                int unit_count = 0;
                for (int id : cyc) {
                    const Edge& e = inst.edges[id];
                    if (e.touches(a)) continue;
                    if (e.cost == 1) {
                        unit_edge = id;
                        ++unit_count;
                    }
                }
                if (unit_count != 1) continue;
                const Edge& e = inst.edges[unit_edge];
                if (has_edge_between(inst, e.u, opposite) && has_edge_between(inst, e.v, opposite)) return true;
            }
            return false;
        };
        if (side_ok(cycles1, a1, other) && side_ok(cycles2, a2, half)) return true;
    }
    return false;
}

}  // namespace

bool obstruction_check_by_definition(const MapInstance& inst, ObstructionKind kind,
                                     const std::vector<int>& carrier_nodes,
                                     const std::vector<int>& carrier_edges, const OracleBudget& budget) {
    switch (kind) {
        case ObstructionKind::CutNode: {
            if (carrier_nodes.size() != 1) return false;
            return components_without(inst, carrier_nodes) >= 2;
        }
        case ObstructionKind::ParallelEdges: {
            if (carrier_edges.size() != 2) return false;
            const Edge& a = inst.edges[carrier_edges[0]];
            const Edge& b = inst.edges[carrier_edges[1]];
            if (carrier_edges[0] == carrier_edges[1]) return false;
            return (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
        }
        case ObstructionKind::ZeroCostS2: {
            if (carrier_edges.size() != 1) return false;
            const Edge& e = inst.edges[carrier_edges[0]];
            if (e.cost != 0) return false;
            return components_without(inst, {e.u, e.v}) >= 2;
        }
        case ObstructionKind::UnitCostS2: {
            if (carrier_edges.size() != 1) return false;
            const Edge& e = inst.edges[carrier_edges[0]];
            if (e.cost != 1) return false;
            if (components_without(inst, {e.u, e.v}) < 2) return false;
            return s2_side_conditions(inst, e.u, e.v, budget, true);
        }
        case ObstructionKind::S34: {
            int k = static_cast<int>(carrier_nodes.size());
            if (k != 3 && k != 4) return false;
            if (k >= inst.node_count) return false;
            InducedSubInstance sub = induced_subinstance(inst, carrier_nodes);
            if (!is_two_edge_connected_instance(sub.graph)) return false;
            if (k == 4 && !cut_nodes(EdgeSubgraph::full(sub.graph)).empty()) return false;  // 2NC
            long long cyc = min_spanning_cycle_cost(sub.graph, [&] {
                std::vector<int> locals(k);
                for (int i = 0; i < k; ++i) locals[i] = i;
                return locals;
            }());
            if (cyc != 2) return false;
            if (components_without(inst, carrier_nodes) < 2) return false;
            std::vector<char> in_set(inst.node_count, 0);
            for (int v : carrier_nodes) in_set[v] = 1;
            for (const Edge& e : inst.edges)
                if (in_set[e.u] != in_set[e.v] && e.cost == 0) return false;
            ContractionResult con = contract(inst, carrier_nodes);
            std::vector<InducedSubInstance> blocks;
            try {
                blocks = two_ec_v_blocks(con.quotient, con.contracted_node);
            } catch (const validation_error&) {
                return false;
            }
            int good = 0;
            for (const auto& blk : blocks)
                if (opt_at_least(blk.graph, 3, budget)) ++good;
            return good >= 2;
        }
        case ObstructionKind::R4: {
            if (carrier_nodes.size() != 4) return false;
            if (static_cast<int>(carrier_nodes.size()) >= inst.node_count) return false;
            if (cost_two_four_cycles(inst, carrier_nodes).empty()) return false;
            std::vector<int> deg(inst.node_count, 0);
            for (const Edge& e : inst.edges) {
                ++deg[e.u];
                ++deg[e.v];
            }
            auto adjacent = [&](int a, int b) {
                for (const Edge& e : inst.edges)
                    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
                return false;
            };
            for (size_t i = 0; i < carrier_nodes.size(); ++i)
                for (size_t j = i + 1; j < carrier_nodes.size(); ++j) {
                    int p = carrier_nodes[i], q = carrier_nodes[j];
                    if (!adjacent(p, q) && deg[p] == 2 && deg[q] == 2) return true;
                }
            return false;
        }
        case ObstructionKind::R8:
            return r8_by_definition(inst, carrier_nodes, budget);
    }
    return false;
}

}  // namespace matchaug
