#include "matchaug/obstructions.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "matchaug/errors.hpp"

namespace matchaug {

namespace {

// Reusable node-deletion connectivity probe; the adjacency is built once and
// BFS buffers are stamped instead of cleared, so a full S2 sweep stays
// near-linear per query.
class ConnectivityProbe {
public:
    explicit ConnectivityProbe(const MapInstance& inst)
        : n_(inst.node_count), adj_(Adjacency::build_full(inst)), stamp_(inst.node_count, 0),
          removed_(inst.node_count, 0), cur_(0) {}

    int components_without(const std::vector<int>& removed) {
        ++cur_;
        for (int v : removed) removed_[v] = cur_;
        int count = 0;
        for (int s = 0; s < n_; ++s) {
            if (stamp_[s] == cur_ || removed_[s] == cur_) continue;
            ++count;
            stack_.clear();
            stack_.push_back(s);
            stamp_[s] = cur_;
            while (!stack_.empty()) {
                int x = stack_.back();
                stack_.pop_back();
                for (const auto& arc : adj_.at[x]) {
                    if (stamp_[arc.to] == cur_ || removed_[arc.to] == cur_) continue;
                    stamp_[arc.to] = cur_;
                    stack_.push_back(arc.to);
                }
            }
        }
        return count;
    }

private:
    int n_;
    Adjacency adj_;
    std::vector<long long> stamp_, removed_;
    std::vector<int> stack_;
    long long cur_;
};

int component_count_without(const MapInstance& inst, const std::vector<int>& removed) {
    ConnectivityProbe probe(inst);
    return probe.components_without(removed);
}

// Zero-partner of each node (zero-edges form a matching), -1 if unmatched.
std::vector<int> zero_partner(const MapInstance& inst) {
    std::vector<int> partner(inst.node_count, -1);
    for (const Edge& e : inst.edges) {
        if (e.cost != 0) continue;
        partner[e.u] = e.v;
        partner[e.v] = e.u;
    }
    return partner;
}

// Lowest edge id between a and b with the given cost (-1 for any cost).
int edge_between(const MapInstance& inst, int a, int b, int want_cost = -1) {
    for (int id = 0; id < inst.edge_count(); ++id) {
        const Edge& e = inst.edges[id];
        if (((e.u == a && e.v == b) || (e.u == b && e.v == a)) && (want_cost < 0 || e.cost == want_cost))
            return id;
    }
    return -1;
}

// Node sets of size 3 or 4 admitting a cost-two spanning cycle. Every such
// cycle alternates around its zero-edges, so candidates grow from zero-edges:
// triangles as zero-edge + common neighbor, 4-cycles as two zero-edges tied
// together by unit-edges on both sides.
std::vector<std::vector<int>> cost_two_cycle_carriers(const MapInstance& inst, bool triangles, bool quads) {
    Adjacency adj = Adjacency::build_full(inst);
    auto partner = zero_partner(inst);
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    auto push = [&](std::vector<int> nodes) {
        std::sort(nodes.begin(), nodes.end());
        if (seen.insert(nodes).second) out.push_back(nodes);
    };
    for (int id = 0; id < inst.edge_count(); ++id) {
        const Edge& z = inst.edges[id];
        if (z.cost != 0) continue;
        if (triangles) {
            std::vector<char> near_u(inst.node_count, 0);
            for (const auto& arc : adj.at[z.u]) near_u[arc.to] = 1;
            for (const auto& arc : adj.at[z.v])
                if (arc.to != z.u && near_u[arc.to]) push({z.u, z.v, arc.to});
        }
        if (quads) {
            for (const auto& arc : adj.at[z.u]) {
                if (inst.edges[arc.edge].cost != 1) continue;
                int x = arc.to;
                int y = partner[x];
                if (y < 0 || x == z.v || y == z.u || y == z.v) continue;
                if (edge_between(inst, y, z.v, 1) >= 0) push({z.u, z.v, x, y});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// A cost-two spanning cycle of the carrier, as edge ids (lowest-cost then
// lowest-id edge per consecutive pair), or empty.
std::vector<int> spanning_cycle_cost_two(const MapInstance& inst, const std::vector<int>& nodes) {
    int k = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> orders;
    if (k == 3)
        orders = {{0, 1, 2}};
    else if (k == 4)
        orders = {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}};
    else
        return {};
    for (const auto& order : orders) {
        long long c = 0;
        std::vector<int> cyc;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            int a = nodes[order[i]], b = nodes[order[(i + 1) % k]];
            int zero_id = edge_between(inst, a, b, 0);
            int pick = zero_id >= 0 ? zero_id : edge_between(inst, a, b, 1);
            if (pick < 0)
                ok = false;
            else {
                c += inst.edges[pick].cost;
                cyc.push_back(pick);
            }
        }
        if (ok && c == 2) return cyc;
    }
    return {};
}

bool induced_is_2nc(const MapInstance& inst, const std::vector<int>& nodes) {
    InducedSubInstance sub = induced_subinstance(inst, nodes);
    if (sub.graph.node_count <= 2) return false;
    auto full = EdgeSubgraph::full(sub.graph);
    if (connected_components(full, true).size() != 1) return false;
    for (int v = 0; v < sub.graph.node_count; ++v) {
        std::vector<int> keep;
        for (int id = 0; id < sub.graph.edge_count(); ++id)
            if (!sub.graph.edges[id].touches(v)) keep.push_back(id);
        int comps = 0;
        for (const auto& comp : connected_components(EdgeSubgraph::of(sub.graph, keep), true))
            if (!(comp.size() == 1 && comp[0] == v)) ++comps;
        if (comps != 1) return false;
    }
    return true;
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

bool s2_blocks_ok(const MapInstance& inst, int u, int v, bool need_zero_edges, const OracleBudget& budget) {
    ContractionResult con = contract(inst, {u, v});
    std::vector<InducedSubInstance> blocks;
    try {
        blocks = two_ec_v_blocks(con.quotient, con.contracted_node);
    } catch (const validation_error&) {
        return false;
    }
    int eligible = 0;
    for (const auto& blk : blocks) {
        if (need_zero_edges) {
            bool zero_at_vhat = false;
            for (int j = 0; j < blk.graph.edge_count() && !zero_at_vhat; ++j) {
                const Edge& e = blk.graph.edges[j];
                if (e.cost == 0 &&
                    (blk.nodes[e.u] == con.contracted_node || blk.nodes[e.v] == con.contracted_node))
                    zero_at_vhat = true;
            }
            if (!zero_at_vhat) continue;
        }
        if (opt_at_least(blk.graph, 3, budget)) ++eligible;
        if (eligible >= 2) return true;
    }
    return false;
}

}  // namespace

std::optional<Obstruction> find_cut_node(const MapInstance& inst) {
    auto cuts = cut_nodes(EdgeSubgraph::full(inst));
    if (cuts.empty()) return std::nullopt;
    Obstruction o;
    o.kind = ObstructionKind::CutNode;
    o.nodes = {cuts.front()};
    return o;
}

std::optional<Obstruction> find_parallel_edges(const MapInstance& inst) {
    std::map<std::pair<int, int>, int> first_seen;
    for (int id = 0; id < inst.edge_count(); ++id) {
        const Edge& e = inst.edges[id];
        auto key = std::minmax(e.u, e.v);
        auto [it, fresh] = first_seen.try_emplace({key.first, key.second}, id);
        if (!fresh) {
            Obstruction o;
            o.kind = ObstructionKind::ParallelEdges;
            o.nodes = {key.first, key.second};
            o.edges = {it->second, id};
            return o;
        }
    }
    return std::nullopt;
}

bool is_zero_cost_s2(const MapInstance& inst, int edge_id) {
    const Edge& e = inst.edges[edge_id];
    if (e.cost != 0) return false;
    return component_count_without(inst, {e.u, e.v}) >= 2;
}

bool is_unit_cost_s2(const MapInstance& inst, int edge_id, const OracleBudget& budget) {
    const Edge& e = inst.edges[edge_id];
    if (e.cost != 1) return false;
    if (component_count_without(inst, {e.u, e.v}) < 2) return false;
    return s2_blocks_ok(inst, e.u, e.v, true, budget);
}

std::optional<Obstruction> find_zero_cost_s2(const MapInstance& inst) {
    ConnectivityProbe probe(inst);
    for (int id = 0; id < inst.edge_count(); ++id) {
        const Edge& e = inst.edges[id];
        if (e.cost != 0) continue;
        if (probe.components_without({e.u, e.v}) >= 2) {
            Obstruction o;
            o.kind = ObstructionKind::ZeroCostS2;
            o.nodes = {std::min(e.u, e.v), std::max(e.u, e.v)};
            o.edges = {id};
            return o;
        }
    }
    return std::nullopt;
}

std::optional<Obstruction> find_unit_cost_s2(const MapInstance& inst, const OracleBudget& budget) {
    ConnectivityProbe probe(inst);
    for (int id = 0; id < inst.edge_count(); ++id) {
        const Edge& e = inst.edges[id];
        if (e.cost != 1) continue;
        if (probe.components_without({e.u, e.v}) < 2) continue;
        if (s2_blocks_ok(inst, e.u, e.v, true, budget)) {
            Obstruction o;
            o.kind = ObstructionKind::UnitCostS2;
            o.nodes = {std::min(e.u, e.v), std::max(e.u, e.v)};
            o.edges = {id};
            return o;
        }
    }
    return std::nullopt;
}

bool is_s34(const MapInstance& inst, const std::vector<int>& nodes, const OracleBudget& budget) {
    int k = static_cast<int>(nodes.size());
    if ((k != 3 && k != 4) || k >= inst.node_count) return false;
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (!induced_is_2nc(inst, sorted)) return false;
    if (spanning_cycle_cost_two(inst, sorted).empty()) return false;
    if (component_count_without(inst, sorted) < 2) return false;
    std::vector<char> in_set(inst.node_count, 0);
    for (int v : sorted) in_set[v] = 1;
    for (const Edge& e : inst.edges)
        if (in_set[e.u] != in_set[e.v] && e.cost == 0) return false;
    ContractionResult con = contract(inst, sorted);
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

std::optional<Obstruction> find_s34(const MapInstance& inst, const OracleBudget& budget) {
    for (const auto& carrier : cost_two_cycle_carriers(inst, true, true)) {
        if (is_s34(inst, carrier, budget)) {
            Obstruction o;
            o.kind = ObstructionKind::S34;
            o.nodes = carrier;
            o.cycle_edges = spanning_cycle_cost_two(inst, carrier);
            return o;
        }
    }
    return std::nullopt;
}

bool is_r4(const MapInstance& inst, const std::vector<int>& nodes) {
    if (nodes.size() != 4 || static_cast<int>(nodes.size()) >= inst.node_count) return false;
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (spanning_cycle_cost_two(inst, sorted).empty()) return false;
    std::vector<int> deg(inst.node_count, 0);
    for (const Edge& e : inst.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = i + 1; j < sorted.size(); ++j) {
            int p = sorted[i], q = sorted[j];
            if (edge_between(inst, p, q) < 0 && deg[p] == 2 && deg[q] == 2) return true;
        }
    return false;
}

std::optional<Obstruction> find_r4(const MapInstance& inst) {
    for (const auto& carrier : cost_two_cycle_carriers(inst, false, true)) {
        if (is_r4(inst, carrier)) {
            Obstruction o;
            o.kind = ObstructionKind::R4;
            o.nodes = carrier;
            o.cycle_edges = spanning_cycle_cost_two(inst, carrier);
            return o;
        }
    }
    return std::nullopt;
}

namespace {

// The cost-five replacement set of an R8: both 4-cycles, minus the
// unique unit-edge of C1 - a1, plus the two edges tying its end nodes to C2.
struct R8Shape {
    std::vector<int> repair_edges;
    int a1, a2;
};

std::optional<R8Shape> r8_shape(const MapInstance& inst, const std::vector<int>& half,
                                const std::vector<int>& other, int a1, int a2) {
    auto cyc1 = spanning_cycle_cost_two(inst, half);
    auto cyc2 = spanning_cycle_cost_two(inst, other);
    if (cyc1.empty() || cyc2.empty()) return std::nullopt;
    auto unique_unit_off = [&](const std::vector<int>& cyc, int a) {
        int unit = -1, count = 0;
        for (int id : cyc) {
            const Edge& e = inst.edges[id];
            if (e.touches(a) || e.cost != 1) continue;
            unit = id;
            ++count;
        }
        return count == 1 ? unit : -1;
    };
    auto to_other = [&](int x, const std::vector<int>& target) {
        std::vector<char> in_target(inst.node_count, 0);
        for (int v : target) in_target[v] = 1;
        int best = -1;
        for (int id = 0; id < inst.edge_count(); ++id) {
            const Edge& e = inst.edges[id];
            if ((e.u == x && in_target[e.v]) || (e.v == x && in_target[e.u])) {
                best = id;
                break;
            }
        }
        return best;
    };
    int e1 = unique_unit_off(cyc1, a1);
    int e2 = unique_unit_off(cyc2, a2);
    if (e1 < 0 || e2 < 0) return std::nullopt;
    int f1 = to_other(inst.edges[e1].u, other);
    int f2 = to_other(inst.edges[e1].v, other);
    int g1 = to_other(inst.edges[e2].u, half);
    int g2 = to_other(inst.edges[e2].v, half);
    if (f1 < 0 || f2 < 0 || g1 < 0 || g2 < 0) return std::nullopt;
    R8Shape shape;
    shape.a1 = a1;
    shape.a2 = a2;
    for (int id : cyc1)
        if (id != e1) shape.repair_edges.push_back(id);
    shape.repair_edges.insert(shape.repair_edges.end(), cyc2.begin(), cyc2.end());
    shape.repair_edges.push_back(f1);
    shape.repair_edges.push_back(f2);
    std::sort(shape.repair_edges.begin(), shape.repair_edges.end());
    return shape;
}

std::optional<R8Shape> r8_check(const MapInstance& inst, const std::vector<int>& sorted) {
    if (sorted.size() != 8 || static_cast<int>(sorted.size()) >= inst.node_count) return std::nullopt;
    std::vector<int> att = attachments_of(inst, sorted);
    if (att.size() != 2) return std::nullopt;
    // Split into the two 4-cycles; the half containing sorted[0] is canonical.
    for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) != 4 || !(mask & 1)) continue;
        std::vector<int> half, other;
        for (int i = 0; i < 8; ++i) ((mask >> i) & 1 ? half : other).push_back(sorted[i]);
        auto in = [&](const std::vector<int>& set, int x) {
            return std::find(set.begin(), set.end(), x) != set.end();
        };
        int a1 = -1, a2 = -1;
        if (in(half, att[0]) && in(other, att[1])) {
            a1 = att[0];
            a2 = att[1];
        } else if (in(half, att[1]) && in(other, att[0])) {
            a1 = att[1];
            a2 = att[0];
        } else {
            continue;
        }
        auto shape = r8_shape(inst, half, other, a1, a2);
        if (shape) {
            // C1 is the half containing the smallest node.
            if (!(mask & 1)) continue;
            return shape;
        }
    }
    return std::nullopt;
}

}  // namespace

bool is_r8(const MapInstance& inst, const std::vector<int>& nodes) {
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    return r8_check(inst, sorted).has_value();
}

std::optional<Obstruction> find_r8(const MapInstance& inst) {
    auto quads = cost_two_cycle_carriers(inst, false, true);
    for (size_t i = 0; i < quads.size(); ++i) {
        for (size_t j = 0; j < quads.size(); ++j) {
            if (i == j) continue;
            std::vector<int> merged = quads[i];
            bool disjoint = true;
            for (int v : quads[j]) {
                if (std::binary_search(quads[i].begin(), quads[i].end(), v)) disjoint = false;
                merged.push_back(v);
            }
            if (!disjoint) continue;
            std::sort(merged.begin(), merged.end());
            if (merged[0] != quads[i][0]) continue;  // canonical orientation, dedupes pairs
            auto shape = r8_check(inst, merged);
            if (shape) {
                Obstruction o;
                o.kind = ObstructionKind::R8;
                o.nodes = merged;
                o.cycle_edges = shape->repair_edges;
                o.cert_nodes = {shape->a1, shape->a2};
                return o;
            }
        }
    }
    return std::nullopt;
}

std::optional<Obstruction> detect(const MapInstance& inst, const OracleBudget& budget) {
    if (auto o = find_cut_node(inst)) return o;
    if (auto o = find_parallel_edges(inst)) return o;
    if (auto o = find_unit_cost_s2(inst, budget)) return o;
    if (auto o = find_zero_cost_s2(inst)) return o;
    if (auto o = find_s34(inst, budget)) return o;
    if (auto o = find_r4(inst)) return o;
    if (auto o = find_r8(inst)) return o;
    return std::nullopt;
}

std::vector<Obstruction> scan_all(const MapInstance& inst, const OracleBudget& budget) {
    std::vector<Obstruction> out;
    for (int v : cut_nodes(EdgeSubgraph::full(inst))) {
        Obstruction o;
        o.kind = ObstructionKind::CutNode;
        o.nodes = {v};
        out.push_back(o);
    }
    {
        std::map<std::pair<int, int>, std::vector<int>> classes;
        for (int id = 0; id < inst.edge_count(); ++id) {
            auto key = std::minmax(inst.edges[id].u, inst.edges[id].v);
            classes[{key.first, key.second}].push_back(id);
        }
        for (const auto& [key, ids] : classes) {
            if (ids.size() < 2) continue;
            Obstruction o;
            o.kind = ObstructionKind::ParallelEdges;
            o.nodes = {key.first, key.second};
            o.edges = ids;
            out.push_back(o);
        }
    }
    {
        ConnectivityProbe probe(inst);
        for (int id = 0; id < inst.edge_count(); ++id) {
            const Edge& e = inst.edges[id];
            if (probe.components_without({e.u, e.v}) < 2) continue;
            if (e.cost == 1 && !s2_blocks_ok(inst, e.u, e.v, true, budget)) continue;
            Obstruction o;
            o.kind = e.cost == 1 ? ObstructionKind::UnitCostS2 : ObstructionKind::ZeroCostS2;
            o.edges = {id};
            o.nodes = {std::min(e.u, e.v), std::max(e.u, e.v)};
            out.push_back(o);
        }
    }
    for (const auto& carrier : cost_two_cycle_carriers(inst, true, true)) {
        if (is_s34(inst, carrier, budget)) {
            Obstruction o;
            o.kind = ObstructionKind::S34;
            o.nodes = carrier;
            o.cycle_edges = spanning_cycle_cost_two(inst, carrier);
            out.push_back(o);
        }
        if (carrier.size() == 4 && is_r4(inst, carrier)) {
            Obstruction o;
            o.kind = ObstructionKind::R4;
            o.nodes = carrier;
            o.cycle_edges = spanning_cycle_cost_two(inst, carrier);
            out.push_back(o);
        }
    }
    auto quads = cost_two_cycle_carriers(inst, false, true);
    for (size_t i = 0; i < quads.size(); ++i)
        for (size_t j = i + 1; j < quads.size(); ++j) {
            std::vector<int> merged = quads[i];
            bool disjoint = true;
            for (int v : quads[j]) {
                if (std::binary_search(quads[i].begin(), quads[i].end(), v)) disjoint = false;
                merged.push_back(v);
            }
            if (!disjoint) continue;
            std::sort(merged.begin(), merged.end());
            if (auto shape = r8_check(inst, merged)) {
                Obstruction o;
                o.kind = ObstructionKind::R8;
                o.nodes = merged;
                o.cycle_edges = shape->repair_edges;
                o.cert_nodes = {shape->a1, shape->a2};
                out.push_back(o);
            }
        }
    return out;
}

bool is_well_structured(const MapInstance& inst, const OracleBudget& budget) {
    return inst.node_count >= 12 && !detect(inst, budget).has_value();
}

}  // namespace matchaug
