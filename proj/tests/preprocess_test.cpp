#include <numeric>

#include "doctest.h"
#include "matchaug/generators.hpp"
#include "matchaug/oracle.hpp"
#include "matchaug/pipeline.hpp"
#include "matchaug/preprocess.hpp"
#include "test_support.hpp"

using namespace matchaug;
using namespace testsupport;

namespace {

// max(opt, (5 opt - 6)/3) >= cost, compared over a common denominator.
bool within_guarantee(long long cost, long long opt) {
    return 3 * cost <= std::max(3 * opt, 5 * opt - 6);
}

std::unordered_map<int, std::vector<int>> solve_leaves_exactly(const DecompositionTrace& trace) {
    OracleBudget budget;
    std::unordered_map<int, std::vector<int>> solutions;
    for (int leaf : trace.leaves) {
        const SubInstance& sub = trace.instances[leaf];
        auto sol = opt_2ecss(sub.graph, budget);
        std::vector<int> roots;
        for (int id : sol.witness.edge_ids) roots.push_back(sub.edge_origin[id]);
        std::sort(roots.begin(), roots.end());
        solutions[leaf] = roots;
    }
    return solutions;
}

}  // namespace

TEST_SUITE_BEGIN("preprocess");

TEST_CASE("the stranded instance decomposes by one S34 contraction into two tiny leaves") {
    MapInstance g = gen_g1();
    DecompositionTrace trace = decompose(g);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].kind == StepKind::S34);
    CHECK(trace.steps[0].carrier_nodes == std::vector<int>{4, 5, 6, 7});
    REQUIRE(trace.leaves.size() == 2);
    for (int leaf : trace.leaves) CHECK(trace.instances[leaf].graph.node_count < 12);
}

TEST_CASE("a well-structured instance is a single leaf with no steps") {
    DecompositionTrace trace = decompose(gen_tight_s3(1));
    CHECK(trace.steps.empty());
    REQUIRE(trace.leaves.size() == 1);
    CHECK(trace.leaves[0] == 0);
}

TEST_CASE("a cut node splits a 13-node bowtie of 7-cycles") {
    MapInstance g;
    g.node_count = 13;
    for (int i = 0; i < 7; ++i) g.edges.push_back({i, (i + 1) % 7, 1});
    g.edges.push_back({0, 7, 1});
    for (int i = 7; i < 12; ++i) g.edges.push_back({i, i + 1, 1});
    g.edges.push_back({12, 0, 1});
    DecompositionTrace trace = decompose(g);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].kind == StepKind::CutNode);
    CHECK(trace.steps[0].carrier_nodes == std::vector<int>{0});
    CHECK(trace.leaves.size() == 2);
}

TEST_CASE("phi strictly decreases and leaves are edge-disjoint") {
    for (int seed = 1; seed <= 40; ++seed) {
        MapInstance g = gen_planted(seed);
        DecompositionTrace trace = decompose(g);
        for (size_t i = 1; i < trace.phi_history.size(); ++i)
            CHECK(trace.phi_history[i] < trace.phi_history[i - 1]);
        CHECK(trace.phi_history.size() <= static_cast<size_t>(g.edge_count() + g.node_count + 1));
        std::vector<int> seen;
        for (int leaf : trace.leaves)
            for (int id : trace.instances[leaf].edge_origin) seen.push_back(id);
        std::sort(seen.begin(), seen.end());
        CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
        for (int id : seen) CHECK(id < g.edge_count());
        for (int leaf : trace.leaves) {
            const SubInstance& sub = trace.instances[leaf];
            CHECK(is_two_edge_connected_instance(sub.graph));
            bool ok = sub.graph.node_count < 12 || is_well_structured(sub.graph);
            CHECK(ok);
        }
    }
}

TEST_CASE("decomposition is deterministic") {
    for (int seed = 1; seed <= 10; ++seed) {
        MapInstance g = gen_planted(seed);
        DecompositionTrace a = decompose(g), b = decompose(g);
        CHECK(write_trace_log(a) == write_trace_log(b));
    }
}

TEST_CASE("cut-node undo is the union of the block solutions") {
    MapInstance g;
    g.node_count = 13;
    for (int i = 0; i < 7; ++i) g.edges.push_back({i, (i + 1) % 7, 1});
    g.edges.push_back({0, 7, 1});
    for (int i = 7; i < 12; ++i) g.edges.push_back({i, i + 1, 1});
    g.edges.push_back({12, 0, 1});
    DecompositionTrace trace = decompose(g);
    auto solution = recombine(trace, solve_leaves_exactly(trace));
    CHECK(static_cast<long long>(solution.size()) == 14);
    CHECK(g.cost_of(solution) == opt_2ecss(g).cost);
}

TEST_CASE("parallel-edge undo keeps the child's solution verbatim") {
    MapInstance g;
    g.node_count = 12;
    for (int i = 0; i < 12; ++i) g.edges.push_back({i, (i + 1) % 12, 1});
    g.edges.push_back({0, 1, 1});  // the duplicate copy
    g.edges.push_back({3, 9, 1});
    DecompositionTrace trace = decompose(g);
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].kind == StepKind::ParallelEdge);
    auto solution = recombine(trace, solve_leaves_exactly(trace));
    CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));
    CHECK(std::find(solution.begin(), solution.end(), 12) == solution.end());
}

TEST_CASE("a zero-unit parallel pair discards the unit copy") {
    MapInstance g;
    g.node_count = 12;
    g.edges.push_back({0, 1, 0});
    for (int i = 1; i < 12; ++i) g.edges.push_back({i, (i + 1) % 12, 1});
    g.edges.push_back({0, 1, 1});  // unit copy parallel to the zero-edge
    g.edges.push_back({4, 9, 1});
    DecompositionTrace trace = decompose(g);
    REQUIRE(!trace.steps.empty());
    REQUIRE(trace.steps[0].kind == StepKind::ParallelEdge);
    // Child keeps the zero copy and drops the unit one.
    const SubInstance& child = trace.instances[trace.steps[0].children[0]];
    bool kept_zero = false, kept_unit_copy = false;
    for (size_t j = 0; j < child.edge_origin.size(); ++j) {
        if (child.edge_origin[j] == 0) kept_zero = true;
        if (child.edge_origin[j] == 12) kept_unit_copy = true;
    }
    CHECK(kept_zero);
    CHECK_FALSE(kept_unit_copy);
}

TEST_CASE("zero-cost S2 undo covers both of its branches") {
    // Branch with every block opt >= 3: the figure instance.
    MapInstance g = zero_s2_instance();
    DecompositionTrace trace = decompose(g);
    bool saw_zero_s2 = false;
    for (const auto& step : trace.steps) saw_zero_s2 = saw_zero_s2 || step.kind == StepKind::ZeroS2;
    CHECK(saw_zero_s2);
    auto solution = recombine(trace, solve_leaves_exactly(trace));
    CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));

    // Branch with a block of opt two: a pendant triangle through the zero-edge.
    MapInstance h;
    h.node_count = 13;
    for (int i = 0; i < 10; ++i) h.edges.push_back({i, (i + 1) % 10, 1});
    h.edges.push_back({0, 5, 1});
    h.edges.push_back({10, 11, 0});
    h.edges.push_back({10, 12, 1});
    h.edges.push_back({11, 12, 1});
    h.edges.push_back({10, 2, 1});
    h.edges.push_back({11, 7, 1});
    DecompositionTrace th = decompose(h);
    REQUIRE(!th.steps.empty());
    CHECK(th.steps[0].kind == StepKind::ZeroS2);
    CHECK(th.steps[0].special_child >= 0);
    CHECK(h.cost_of(th.steps[0].cycle_root) == 2);
    auto hsol = recombine(th, solve_leaves_exactly(th));
    CHECK(within_guarantee(h.cost_of(hsol), opt_2ecss(h).cost));
}

TEST_CASE("unit-cost S2 undo restores a spanning 2-ECSS within the bound") {
    MapInstance g = unit_s2_instance();
    DecompositionTrace trace = decompose(g);
    bool saw_unit_s2 = false;
    for (const auto& step : trace.steps) saw_unit_s2 = saw_unit_s2 || step.kind == StepKind::UnitS2;
    CHECK(saw_unit_s2);
    auto solution = recombine(trace, solve_leaves_exactly(trace));
    CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));
}

TEST_CASE("S34 undo re-adds a cost-two spanning cycle") {
    MapInstance g = s34_instance();
    DecompositionTrace trace = decompose(g);
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].kind == StepKind::S34);
    CHECK(g.cost_of(trace.steps[0].cycle_root) == 2);
    auto solution = recombine(trace, solve_leaves_exactly(trace));
    CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));
}

TEST_CASE("a triangle S34 is contracted and undone through its cost-two cycle") {
    MapInstance g = s34_triangle_instance();
    DecompositionTrace trace = decompose(g);
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].kind == StepKind::S34);
    CHECK(trace.steps[0].carrier_nodes == std::vector<int>{0, 1, 2});
    CHECK(trace.steps[0].cycle_root.size() == 3);
    CHECK(g.cost_of(trace.steps[0].cycle_root) == 2);
    auto solution = recombine(trace, solve_leaves_exactly(trace));
    CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));
}

TEST_CASE("R4 undo adds the redundant cycle at cost two") {
    MapInstance g = r4_instance();
    DecompositionTrace trace = decompose(g);
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].kind == StepKind::R4);
    CHECK(g.cost_of(trace.steps[0].cycle_root) == 2);
    auto solution = recombine(trace, solve_leaves_exactly(trace));
    CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));
    for (int id : trace.steps[0].cycle_root)
        CHECK(std::find(solution.begin(), solution.end(), id) != solution.end());
}

TEST_CASE("R8 undo installs the cost-five repair set") {
    // The double-quad gadget family carries exactly one obstruction, its R8.
    MapInstance g = gen_g3(1);
    DecompositionTrace trace = decompose(g);
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].kind == StepKind::R8);
    CHECK(g.cost_of(trace.steps[0].cycle_root) == 5);
    auto solution = recombine(trace, solve_leaves_exactly(trace));
    CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));
}

TEST_CASE("the separating-quad family decomposes through its S34") {
    MapInstance g = gen_g2(1);
    DecompositionTrace trace = decompose(g);
    REQUIRE(!trace.steps.empty());
    CHECK(trace.steps[0].kind == StepKind::S34);
    auto solution = recombine(trace, solve_leaves_exactly(trace));
    CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));
}

TEST_CASE("the double-quad shapes with a rich root pass through their mixed quad first") {
    // With a sparse root the two quads interlock into a separating 4-cycle
    // that outranks the R8 in removal priority; the trace still recombines
    // within the guarantee.
    for (MapInstance g : {r8_instance_a(), r8_instance_b()}) {
        DecompositionTrace trace = decompose(g);
        REQUIRE(!trace.steps.empty());
        auto solution = recombine(trace, solve_leaves_exactly(trace));
        CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));
    }
}

TEST_CASE("single-leaf recombination is the identity") {
    MapInstance g = gen_tight_s3(1);
    DecompositionTrace trace = decompose(g);
    auto leaves = solve_leaves_exactly(trace);
    auto expected = leaves.at(0);
    CHECK(recombine(trace, std::move(leaves)) == expected);
}

TEST_CASE("recombined cost meets the guarantee against the oracle on seeded roots") {
    int exercised = 0;
    for (int seed = 1; seed <= 60; ++seed) {
        MapInstance g = gen_planted(seed);
        if (g.node_count > 16) continue;
        DecompositionTrace trace = decompose(g);
        auto solution = recombine(trace, solve_leaves_exactly(trace));
        Verdict v = verify_solution(g, solution);
        CHECK(v.pass());
        CHECK(within_guarantee(g.cost_of(solution), opt_2ecss(g).cost));
        ++exercised;
    }
    CHECK(exercised >= 20);
}

TEST_SUITE_END();
