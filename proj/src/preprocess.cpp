#include "matchaug/preprocess.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "matchaug/errors.hpp"
#include "matchaug/io.hpp"

namespace matchaug {

std::unordered_map<int, int> SubInstance::root_to_local_edge() const {
    std::unordered_map<int, int> map;
    map.reserve(edge_origin.size());
    for (int j = 0; j < static_cast<int>(edge_origin.size()); ++j) map[edge_origin[j]] = j;
    return map;
}

SubInstance root_subinstance(const MapInstance& inst) {
    SubInstance sub;
    sub.graph = inst;
    sub.edge_origin.resize(inst.edge_count());
    for (int i = 0; i < inst.edge_count(); ++i) sub.edge_origin[i] = i;
    sub.node_origin.resize(inst.node_count);
    for (int v = 0; v < inst.node_count; ++v) sub.node_origin[v] = {v};
    return sub;
}

const char* step_kind_name(StepKind kind) {
    switch (kind) {
        case StepKind::CutNode: return "cut-node";
        case StepKind::ParallelEdge: return "parallel-edge";
        case StepKind::UnitS2: return "unit-cost-s2";
        case StepKind::ZeroS2: return "zero-cost-s2";
        case StepKind::S34: return "s34";
        case StepKind::R4: return "r4";
        case StepKind::R8: return "r8";
    }
    return "?";
}

long long phi_value(const std::vector<const SubInstance*>& current) {
    long long phi = 0;
    for (const SubInstance* sub : current) {
        phi += sub->graph.edge_count();
        phi += static_cast<long long>(cut_nodes(EdgeSubgraph::full(sub->graph)).size());
    }
    return phi;
}

namespace {

void require_child_2ec(const SubInstance& child) {
    if (!is_two_edge_connected_instance(child.graph))
        throw theorem_violation("pre-processing emitted a child that is not 2EC",
                                write_instance_text(child.graph));
}

SubInstance child_from_induced(const SubInstance& parent, const InducedSubInstance& block) {
    SubInstance child;
    child.graph = block.graph;
    child.edge_origin.reserve(block.edge_origin.size());
    for (int pe : block.edge_origin) child.edge_origin.push_back(parent.edge_origin[pe]);
    child.node_origin.reserve(block.nodes.size());
    for (int pv : block.nodes) child.node_origin.push_back(parent.node_origin[pv]);
    return child;
}

// Child of a contraction step: quotient-local block re-expressed with root
// identities; the contracted node inherits the union of the shrunk origins.
SubInstance child_from_quotient_block(const SubInstance& parent, const ContractionResult& con,
                                      const std::vector<int>& shrunk_parent_nodes,
                                      const InducedSubInstance& block) {
    std::vector<int> merged_origin;
    for (int pv : shrunk_parent_nodes) {
        const auto& o = parent.node_origin[pv];
        merged_origin.insert(merged_origin.end(), o.begin(), o.end());
    }
    std::sort(merged_origin.begin(), merged_origin.end());

    std::vector<int> quotient_rep(con.quotient.node_count, -1);  // quotient node -> parent node
    for (int pv = 0; pv < static_cast<int>(con.node_map.size()); ++pv) {
        int q = con.node_map[pv];
        if (q != con.contracted_node) quotient_rep[q] = pv;
    }

    SubInstance child;
    child.graph = block.graph;
    for (int qe : block.edge_origin) child.edge_origin.push_back(parent.edge_origin[con.edge_origin[qe]]);
    for (int qv : block.nodes) {
        if (qv == con.contracted_node)
            child.node_origin.push_back(merged_origin);
        else
            child.node_origin.push_back(parent.node_origin[quotient_rep[qv]]);
    }
    return child;
}

std::vector<int> side_nodes_of_quotient_block(const ContractionResult& con,
                                              const InducedSubInstance& block) {
    std::vector<int> quotient_rep(con.quotient.node_count, -1);
    for (int pv = 0; pv < static_cast<int>(con.node_map.size()); ++pv) {
        int q = con.node_map[pv];
        if (q != con.contracted_node) quotient_rep[q] = pv;
    }
    std::vector<int> out;
    for (int qv : block.nodes)
        if (qv != con.contracted_node) out.push_back(quotient_rep[qv]);
    std::sort(out.begin(), out.end());
    return out;
}

// Spanning cycle of cost <= 2 through a required edge, on at most 4 nodes.
std::vector<int> forced_cheap_cycle(const MapInstance& inst, const std::vector<int>& nodes,
                                    int required_edge) {
    int k = static_cast<int>(nodes.size());
    std::vector<std::vector<int>> orders;
    if (k == 3)
        orders = {{0, 1, 2}};
    else if (k == 4)
        orders = {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}};
    else
        return {};
    auto best_edge = [&](int a, int b) {
        int pick = -1;
        for (int id = 0; id < inst.edge_count(); ++id) {
            const Edge& e = inst.edges[id];
            if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) continue;
            if (id == required_edge) return required_edge;
            if (pick < 0 || e.cost < inst.edges[pick].cost) pick = id;
        }
        return pick;
    };
    std::vector<int> best;
    long long best_cost = 3;
    for (const auto& order : orders) {
        std::vector<int> cyc;
        long long c = 0;
        bool ok = true, has_required = false;
        for (int i = 0; i < k && ok; ++i) {
            int id = best_edge(nodes[order[i]], nodes[order[(i + 1) % k]]);
            if (id < 0)
                ok = false;
            else {
                cyc.push_back(id);
                c += inst.edges[id].cost;
                has_required = has_required || id == required_edge;
            }
        }
        if (ok && has_required && c < best_cost) {
            best = cyc;
            best_cost = c;
        }
    }
    return best_cost <= 2 ? best : std::vector<int>{};
}

}  // namespace

DecompositionTrace decompose(const MapInstance& root, const OracleBudget& budget) {
    DecompositionTrace trace;
    trace.instances.push_back(root_subinstance(root));
    std::vector<int> active{0};

    auto current_phi = [&]() {
        std::vector<const SubInstance*> cur;
        for (int i : active) cur.push_back(&trace.instances[i]);
        return phi_value(cur);
    };
    trace.phi_history.push_back(current_phi());

    for (;;) {
        int pick = -1;
        for (int idx : active) {
            const SubInstance& sub = trace.instances[idx];
            if (sub.graph.node_count >= 12 && !is_well_structured(sub.graph, budget)) {
                pick = idx;
                break;
            }
        }
        if (pick < 0) break;

        const SubInstance parent = trace.instances[pick];
        if (!is_two_edge_connected_instance(parent.graph))
            throw theorem_violation("pre-processing reached a sub-instance that is not 2EC",
                                    write_instance_text(parent.graph));
        auto obs = detect(parent.graph, budget);
        assert(obs.has_value());

        TraceStep step;
        step.parent = pick;
        std::vector<SubInstance> children;

        switch (obs->kind) {
            case ObstructionKind::CutNode: {
                step.kind = StepKind::CutNode;
                int v = obs->nodes[0];
                step.carrier_nodes = {v};
                for (const auto& block : two_ec_v_blocks(parent.graph, v)) {
                    children.push_back(child_from_induced(parent, block));
                    std::vector<int> side;
                    for (int pv : block.nodes)
                        if (pv != v) side.push_back(pv);
                    step.child_side_nodes.push_back(side);
                }
                break;
            }
            case ObstructionKind::ParallelEdges: {
                step.kind = StepKind::ParallelEdge;
                // Keep the earliest copy; the discarded one must be a unit-edge.
                int drop = -1;
                for (auto it = obs->edges.rbegin(); it != obs->edges.rend(); ++it)
                    if (parent.graph.edges[*it].cost == 1) {
                        drop = *it;
                        break;
                    }
                if (drop < 0)
                    throw theorem_violation("parallel zero-edges violate the matching constraint",
                                            write_instance_text(parent.graph));
                step.carrier_nodes = obs->nodes;
                step.carrier_edges = obs->edges;
                SubInstance child;
                child.graph.node_count = parent.graph.node_count;
                child.node_origin = parent.node_origin;
                for (int id = 0; id < parent.graph.edge_count(); ++id) {
                    if (id == drop) continue;
                    child.graph.edges.push_back(parent.graph.edges[id]);
                    child.edge_origin.push_back(parent.edge_origin[id]);
                }
                children.push_back(std::move(child));
                step.child_side_nodes.emplace_back();
                break;
            }
            case ObstructionKind::UnitCostS2:
            case ObstructionKind::ZeroCostS2:
            case ObstructionKind::S34: {
                bool is_s34_step = obs->kind == ObstructionKind::S34;
                step.kind = obs->kind == ObstructionKind::UnitCostS2 ? StepKind::UnitS2
                            : obs->kind == ObstructionKind::ZeroCostS2 ? StepKind::ZeroS2
                                                                       : StepKind::S34;
                std::vector<int> shrink = obs->nodes;
                step.carrier_nodes = shrink;
                step.carrier_edges = obs->edges;
                if (!is_s34_step) step.s2_edge_root = parent.edge_origin[obs->edges[0]];
                if (is_s34_step)
                    for (int pe : obs->cycle_edges) step.cycle_root.push_back(parent.edge_origin[pe]);

                ContractionResult con = contract(parent.graph, shrink);
                auto blocks = two_ec_v_blocks(con.quotient, con.contracted_node);
                for (const auto& block : blocks) {
                    children.push_back(child_from_quotient_block(parent, con, shrink, block));
                    step.child_side_nodes.push_back(side_nodes_of_quotient_block(con, block));
                }

                if (obs->kind == ObstructionKind::ZeroCostS2) {
                    // Record the cost-two replacement cycle for the first
                    // child with opt = 2, as the undo's first branch needs it.
                    for (int i = 0; i < static_cast<int>(children.size()); ++i) {
                        if (children[i].graph.node_count > 3) continue;
                        if (opt_2ecss(children[i].graph, budget).cost != 2) continue;
                        std::vector<int> oplus_nodes = step.child_side_nodes[i];
                        oplus_nodes.push_back(shrink[0]);
                        oplus_nodes.push_back(shrink[1]);
                        std::sort(oplus_nodes.begin(), oplus_nodes.end());
                        std::vector<int> cyc = forced_cheap_cycle(parent.graph, oplus_nodes, obs->edges[0]);
                        if (cyc.empty())
                            throw theorem_violation(
                                "zero-cost-s2 block with opt 2 has no cost-two spanning cycle",
                                write_instance_text(parent.graph));
                        step.special_child = i;
                        for (int pe : cyc) step.cycle_root.push_back(parent.edge_origin[pe]);
                        break;
                    }
                }
                break;
            }
            case ObstructionKind::R4:
            case ObstructionKind::R8: {
                step.kind = obs->kind == ObstructionKind::R4 ? StepKind::R4 : StepKind::R8;
                step.carrier_nodes = obs->nodes;
                for (int pe : obs->cycle_edges) step.cycle_root.push_back(parent.edge_origin[pe]);
                ContractionResult con = contract(parent.graph, obs->nodes);
                // Single child: the quotient re-mapped through the contraction.
                SubInstance child;
                child.graph = con.quotient;
                for (int qe : con.edge_origin) child.edge_origin.push_back(parent.edge_origin[qe]);
                std::vector<int> merged;
                for (int pv : obs->nodes) {
                    const auto& o = parent.node_origin[pv];
                    merged.insert(merged.end(), o.begin(), o.end());
                }
                std::sort(merged.begin(), merged.end());
                for (int q = 0; q < con.quotient.node_count; ++q) {
                    if (q == con.contracted_node) {
                        child.node_origin.push_back(merged);
                    } else {
                        for (int pv = 0; pv < static_cast<int>(con.node_map.size()); ++pv)
                            if (con.node_map[pv] == q) {
                                child.node_origin.push_back(parent.node_origin[pv]);
                                break;
                            }
                    }
                }
                children.push_back(std::move(child));
                step.child_side_nodes.emplace_back();
                break;
            }
        }

        for (SubInstance& child : children) require_child_2ec(child);

        active.erase(std::find(active.begin(), active.end(), pick));
        std::vector<int> inserted;
        for (SubInstance& child : children) {
            int idx = static_cast<int>(trace.instances.size());
            trace.instances.push_back(std::move(child));
            inserted.push_back(idx);
        }
        active.insert(active.end(), inserted.begin(), inserted.end());
        step.children = inserted;
        trace.steps.push_back(std::move(step));

        long long phi = current_phi();
        if (phi >= trace.phi_history.back())
            throw theorem_violation("pre-processing potential failed to decrease",
                                    write_instance_text(trace.instances[pick].graph));
        trace.phi_history.push_back(phi);
    }

    trace.leaves = active;
    return trace;
}

namespace {

// Shared tail of the S2 undos: H' = {e} + union of children; if e bridges
// H', repair with the lowest-id edge between child 1's side and the end node
// of e that child 1 misses.
std::vector<int> undo_s2_common(const SubInstance& parent, const TraceStep& step,
                                const std::vector<std::vector<int>>& child_solutions) {
    auto root_to_local = parent.root_to_local_edge();
    std::vector<int> local_ids;
    std::vector<int> roots{step.s2_edge_root};
    for (const auto& sol : child_solutions) roots.insert(roots.end(), sol.begin(), sol.end());
    for (int r : roots) {
        auto it = root_to_local.find(r);
        assert(it != root_to_local.end());
        local_ids.push_back(it->second);
    }
    EdgeSubgraph sub = EdgeSubgraph::of(parent.graph, local_ids);
    int e_local = root_to_local.at(step.s2_edge_root);
    std::vector<int> bridges = find_bridges(sub);
    for (int b : bridges)
        if (b != e_local)
            throw theorem_violation("s2 undo produced an unexpected bridge",
                                    write_instance_text(parent.graph));
    std::vector<int> result_local = sub.edge_ids;
    if (std::find(bridges.begin(), bridges.end(), e_local) != bridges.end()) {
        const Edge& e = parent.graph.edges[e_local];
        // Which end node does child 1 miss entirely?
        std::vector<char> touched(parent.graph.node_count, 0);
        for (int r : child_solutions[0]) {
            const Edge& ce = parent.graph.edges[root_to_local.at(r)];
            touched[ce.u] = touched[ce.v] = 1;
        }
        int missing = -1;
        if (!touched[e.u])
            missing = e.u;
        else if (!touched[e.v])
            missing = e.v;
        if (missing < 0)
            throw theorem_violation("s2 undo: bridge with both ends attached", write_instance_text(parent.graph));
        std::vector<char> side(parent.graph.node_count, 0);
        for (int pv : step.child_side_nodes[0]) side[pv] = 1;
        int repair = -1;
        for (int id = 0; id < parent.graph.edge_count(); ++id) {
            const Edge& f = parent.graph.edges[id];
            if ((f.u == missing && side[f.v]) || (f.v == missing && side[f.u])) {
                repair = id;
                break;
            }
        }
        if (repair < 0)
            throw theorem_violation("s2 undo: no repair edge exists", write_instance_text(parent.graph));
        result_local.push_back(repair);
    }
    return result_local;
}

std::vector<int> to_root(const SubInstance& parent, std::vector<int> local_ids) {
    std::vector<int> out;
    out.reserve(local_ids.size());
    for (int id : local_ids) out.push_back(parent.edge_origin[id]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check_parent_2ecss(const SubInstance& parent, const std::vector<int>& root_solution) {
    auto root_to_local = parent.root_to_local_edge();
    std::vector<int> local;
    for (int r : root_solution) {
        auto it = root_to_local.find(r);
        if (it == root_to_local.end())
            throw theorem_violation("undo emitted an edge outside the parent instance",
                                    write_instance_text(parent.graph));
        local.push_back(it->second);
    }
    if (!is_two_edge_connected(EdgeSubgraph::of(parent.graph, local), true))
        throw theorem_violation("undo result is not a spanning 2-ECSS of the parent",
                                write_instance_text(parent.graph));
}

}  // namespace

std::vector<int> undo_step(const DecompositionTrace& trace, const TraceStep& step,
                           const std::unordered_map<int, std::vector<int>>& solutions) {
    const SubInstance& parent = trace.instances[step.parent];
    std::vector<std::vector<int>> child_solutions;
    for (int c : step.children) child_solutions.push_back(solutions.at(c));

    std::vector<int> result_root;
    switch (step.kind) {
        case StepKind::CutNode:
        case StepKind::ParallelEdge: {
            for (const auto& sol : child_solutions)
                result_root.insert(result_root.end(), sol.begin(), sol.end());
            break;
        }
        case StepKind::UnitS2: {
            result_root = to_root(parent, undo_s2_common(parent, step, child_solutions));
            break;
        }
        case StepKind::ZeroS2: {
            if (step.special_child >= 0) {
                result_root = step.cycle_root;
                for (int i = 0; i < static_cast<int>(child_solutions.size()); ++i) {
                    if (i == step.special_child) continue;
                    result_root.insert(result_root.end(), child_solutions[i].begin(),
                                       child_solutions[i].end());
                }
            } else {
                result_root = to_root(parent, undo_s2_common(parent, step, child_solutions));
            }
            break;
        }
        case StepKind::S34:
        case StepKind::R4:
        case StepKind::R8: {
            result_root = step.cycle_root;
            for (const auto& sol : child_solutions)
                result_root.insert(result_root.end(), sol.begin(), sol.end());
            break;
        }
    }
    std::sort(result_root.begin(), result_root.end());
    result_root.erase(std::unique(result_root.begin(), result_root.end()), result_root.end());
    check_parent_2ecss(parent, result_root);
    return result_root;
}

std::vector<int> recombine(const DecompositionTrace& trace,
                           std::unordered_map<int, std::vector<int>> leaf_solutions) {
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it)
        leaf_solutions[it->parent] = undo_step(trace, *it, leaf_solutions);
    auto found = leaf_solutions.find(0);
    assert(found != leaf_solutions.end());
    return found->second;
}

std::string write_trace_log(const DecompositionTrace& trace) {
    std::ostringstream out;
    for (const TraceStep& step : trace.steps) {
        out << step_kind_name(step.kind) << " parent=" << step.parent << " nodes=";
        for (size_t i = 0; i < step.carrier_nodes.size(); ++i)
            out << (i ? "," : "") << step.carrier_nodes[i] + 1;
        out << " children=";
        for (size_t i = 0; i < step.children.size(); ++i) out << (i ? "," : "") << step.children[i];
        out << '\n';
    }
    out << "leaves=";
    for (size_t i = 0; i < trace.leaves.size(); ++i) out << (i ? "," : "") << trace.leaves[i];
    out << '\n';
    return out.str();
}

}  // namespace matchaug
