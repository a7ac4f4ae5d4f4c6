#include "matchaug/two_edge_cover.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "matchaug/blossom.hpp"
#include "matchaug/errors.hpp"
#include "matchaug/io.hpp"

namespace matchaug {

namespace {

std::vector<int> full_degrees(const MapInstance& inst) {
    std::vector<int> deg(inst.node_count, 0);
    for (const Edge& e : inst.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

void require_min_degree_two(const MapInstance& inst) {
    auto deg = full_degrees(inst);
    for (int v = 0; v < inst.node_count; ++v)
        if (deg[v] < 2)
            throw validation_error("2-edge cover infeasible: node " + std::to_string(v + 1) +
                                   " has degree " + std::to_string(deg[v]));
}

bool is_two_edge_cover(const MapInstance& inst, const std::vector<int>& ids) {
    std::vector<int> deg(inst.node_count, 0);
    for (int id : ids) {
        ++deg[inst.edges[id].u];
        ++deg[inst.edges[id].v];
    }
    for (int v = 0; v < inst.node_count; ++v)
        if (deg[v] < 2) return false;
    return true;
}

}  // namespace

D2Result compute_d2(const MapInstance& inst) {
    require_min_degree_two(inst);
    std::vector<int> unit_ids = inst.unit_edges();
    std::vector<int> zero_ids = inst.zero_edges();
    auto deg = full_degrees(inst);

    int m1 = static_cast<int>(unit_ids.size());
    std::vector<int> slack_offset(inst.node_count + 1, 0);
    for (int v = 0; v < inst.node_count; ++v) slack_offset[v + 1] = slack_offset[v] + (deg[v] - 2);
    int total_nodes = 2 * m1 + slack_offset[inst.node_count];

    BlossomMatcher matcher(total_nodes);
    for (int k = 0; k < m1; ++k) matcher.add_edge(2 * k, 2 * k + 1);
    for (int k = 0; k < m1; ++k) {
        const Edge& e = inst.edges[unit_ids[k]];
        for (int s = slack_offset[e.u]; s < slack_offset[e.u + 1]; ++s) matcher.add_edge(2 * k, 2 * m1 + s);
        for (int s = slack_offset[e.v]; s < slack_offset[e.v + 1]; ++s) matcher.add_edge(2 * k + 1, 2 * m1 + s);
    }
    std::vector<int> mate = matcher.solve();

    // Mate-match every edge with a dangling stub; the swap keeps the matching
    // maximum and makes "both stubs taken by slacks" mean exactly "dropped".
    for (int k = 0; k < m1; ++k) {
        int a = mate[2 * k], b = mate[2 * k + 1];
        assert(a != -1 || b != -1);
        if (a == -1 || b == -1) {
            if (a >= 0) mate[a] = -1;
            if (b >= 0) mate[b] = -1;
            mate[2 * k] = 2 * k + 1;
            mate[2 * k + 1] = 2 * k;
        }
    }

    std::vector<int> cover_ids = zero_ids;
    for (int k = 0; k < m1; ++k)
        if (mate[2 * k] == 2 * k + 1) cover_ids.push_back(unit_ids[k]);

    D2Result result;
    result.cover = EdgeSubgraph::of(inst, cover_ids);
    result.backend = D2Backend::Matching;
    assert(is_two_edge_cover(inst, result.cover.edge_ids));
    return result;
}

D2Result compute_d2_via_oracle(const MapInstance& inst, const OracleBudget& budget) {
    OracleSolution sol = min_2edge_cover(inst, budget);
    D2Result result;
    result.cover = sol.witness;
    result.backend = D2Backend::Oracle;
    return result;
}

namespace {

// A normal-form violation: a small pendant block hanging on a zero-bridge.
// On a valid cover this forces the block to be a triangle {r,a,b} with zero
// edge ab and unit edges ra, rb, with the zero-bridge at r.
struct StarViolation {
    int block_index;
    int r, a, b;
    int edge_ra, edge_rb;
};

std::vector<int> incident_bridge_count(const MapInstance& inst, const BlockDecomposition& dec) {
    std::vector<int> count(dec.block_count(), 0);
    for (int bid : dec.bridges) {
        const Edge& e = inst.edges[bid];
        if (dec.block_of_node[e.u] >= 0) ++count[dec.block_of_node[e.u]];
        if (dec.block_of_node[e.v] >= 0 && dec.block_of_node[e.v] != dec.block_of_node[e.u])
            ++count[dec.block_of_node[e.v]];
    }
    return count;
}

std::optional<StarViolation> first_star_violation(const MapInstance& inst, const EdgeSubgraph& cover) {
    BlockDecomposition dec = block_decomposition(cover);
    auto bridge_count = incident_bridge_count(inst, dec);
    for (int b = 0; b < dec.block_count(); ++b) {
        if (dec.block_size_class[b] != BlockSize::Small) continue;
        if (bridge_count[b] != 1) continue;
        int the_bridge = -1;
        for (int bid : dec.bridges) {
            const Edge& e = inst.edges[bid];
            if (dec.block_of_node[e.u] == b || dec.block_of_node[e.v] == b) the_bridge = bid;
        }
        if (inst.edges[the_bridge].cost != 0) continue;
        StarViolation viol;
        viol.block_index = b;
        const Edge& bridge = inst.edges[the_bridge];
        viol.r = dec.block_of_node[bridge.u] == b ? bridge.u : bridge.v;
        if (dec.blocks[b].size() != 3)
            throw theorem_violation("normal-form violation on a non-triangle small block",
                                    write_instance_text(inst));
        viol.a = viol.b = -1;
        for (int v : dec.blocks[b])
            if (v != viol.r) (viol.a < 0 ? viol.a : viol.b) = v;
        viol.edge_ra = viol.edge_rb = -1;
        for (int id : dec.block_edges[b]) {
            const Edge& e = inst.edges[id];
            if (e.cost == 0) continue;
            if (e.touches(viol.r) && e.touches(viol.a)) viol.edge_ra = id;
            if (e.touches(viol.r) && e.touches(viol.b)) viol.edge_rb = id;
        }
        if (viol.edge_ra < 0 || viol.edge_rb < 0)
            throw theorem_violation("normal-form violation with unexpected triangle costs",
                                    write_instance_text(inst));
        return viol;
    }
    return std::nullopt;
}

// Exhaustive search for a minimum-cost cover in normal form, used only when
// the exchange loop stalls at small n.
std::vector<int> normal_form_cover_by_search(const MapInstance& inst, long long target_cost) {
    std::vector<int> unit_ids = inst.unit_edges();
    std::vector<int> zero_ids = inst.zero_edges();
    std::vector<int> chosen;
    std::vector<int> result;
    std::vector<int> deg(inst.node_count, 0), avail(inst.node_count, 0);
    for (int id : zero_ids) {
        ++deg[inst.edges[id].u];
        ++deg[inst.edges[id].v];
    }
    avail = deg;
    for (int id : unit_ids) {
        ++avail[inst.edges[id].u];
        ++avail[inst.edges[id].v];
    }
    std::function<bool(size_t, long long)> dfs = [&](size_t idx, long long cost) -> bool {
        if (cost > target_cost) return false;
        int deficient = 0;
        for (int v = 0; v < inst.node_count; ++v) {
            if (avail[v] < 2) return false;
            if (deg[v] < 2) ++deficient;
        }
        if (cost + (deficient + 1) / 2 > target_cost) return false;
        if (deficient == 0) {
            std::vector<int> ids = zero_ids;
            ids.insert(ids.end(), chosen.begin(), chosen.end());
            EdgeSubgraph sub = EdgeSubgraph::of(inst, ids);
            if (sub.cost == target_cost && satisfies_d2_normal_form(inst, sub)) {
                result = sub.edge_ids;
                return true;
            }
            if (idx == unit_ids.size()) return false;
        }
        if (idx == unit_ids.size()) return false;
        int id = unit_ids[idx];
        const Edge& e = inst.edges[id];
        chosen.push_back(id);
        ++deg[e.u];
        ++deg[e.v];
        bool found = dfs(idx + 1, cost + 1);
        chosen.pop_back();
        --deg[e.u];
        --deg[e.v];
        if (found) return true;
        --avail[e.u];
        --avail[e.v];
        found = dfs(idx + 1, cost);
        ++avail[e.u];
        ++avail[e.v];
        return found;
    };
    dfs(0, 0);
    return result;
}

}  // namespace

bool satisfies_d2_normal_form(const MapInstance& inst, const EdgeSubgraph& cover) {
    for (int id : inst.zero_edges())
        if (!cover.contains(id)) return false;
    try {
        return !first_star_violation(inst, cover).has_value();
    } catch (const theorem_violation&) {
        return false;
    }
}

D2Result normalize_d2(const MapInstance& inst, const D2Result& d2) {
    long long target_cost = d2.cover.cost;
    std::vector<int> ids = d2.cover.edge_ids;
    for (int id : inst.zero_edges())
        if (!std::binary_search(ids.begin(), ids.end(), id)) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    EdgeSubgraph cover = EdgeSubgraph::of(inst, ids);
    assert(cover.cost == target_cost);

    Adjacency full = Adjacency::build_full(inst);
    long long cap = 4LL * inst.node_count + 16;
    bool stalled = false;
    for (long long round = 0; round <= cap; ++round) {
        std::optional<StarViolation> viol;
        try {
            viol = first_star_violation(inst, cover);
        } catch (const theorem_violation&) {
            stalled = true;
            break;
        }
        if (!viol) break;
        if (round == cap) {
            stalled = true;
            break;
        }
        // Swap one triangle unit-edge for the lowest-id outside edge at the
        // same node; the cost and the cover property are both preserved.
        int best_add = -1, best_drop = -1;
        for (auto [node, drop] : {std::pair{viol->a, viol->edge_ra}, std::pair{viol->b, viol->edge_rb}}) {
            for (const auto& arc : full.at[node]) {
                if (arc.to == viol->r || arc.to == viol->a || arc.to == viol->b) continue;
                if (cover.contains(arc.edge)) continue;
                if (best_add < 0 || arc.edge < best_add) {
                    best_add = arc.edge;
                    best_drop = drop;
                }
                break;  // arcs are edge-id sorted, first hit is the node's best
            }
        }
        if (best_add < 0) {
            stalled = true;
            break;
        }
        std::vector<int> next = cover.edge_ids;
        next.erase(std::find(next.begin(), next.end(), best_drop));
        next.push_back(best_add);
        cover = EdgeSubgraph::of(inst, next);
        assert(cover.cost == target_cost);
        assert(is_two_edge_cover(inst, cover.edge_ids));
    }

    if (stalled) {
        if (inst.node_count <= 16) {
            std::vector<int> found = normal_form_cover_by_search(inst, target_cost);
            if (found.empty())
                throw theorem_violation("no minimum-cost 2-edge cover in normal form exists",
                                        write_instance_text(inst));
            cover = EdgeSubgraph::of(inst, found);
        } else {
            throw theorem_violation("D2 normalization exchanges stalled", write_instance_text(inst));
        }
    }

    D2Result out;
    out.cover = cover;
    out.normalized = true;
    out.backend = d2.backend;
    assert(out.cover.cost == target_cost);
    assert(satisfies_d2_normal_form(inst, out.cover));
    return out;
}

}  // namespace matchaug
