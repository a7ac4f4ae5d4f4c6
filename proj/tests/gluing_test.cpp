#include "doctest.h"
#include "matchaug/bridge_cover.hpp"
#include "matchaug/errors.hpp"
#include "matchaug/generators.hpp"
#include "matchaug/gluing.hpp"
#include "matchaug/obstructions.hpp"
#include "matchaug/oracle.hpp"
#include "matchaug/two_edge_cover.hpp"
#include "test_support.hpp"

using namespace matchaug;
using namespace testsupport;

namespace {

GlueState state_with_floors(const MapInstance& g, const std::vector<int>& h_edges) {
    GlueState state;
    state.h = EdgeSubgraph::of(g, h_edges);
    BlockDecomposition dec = block_decomposition(state.h);
    for (int b = 0; b < dec.block_count(); ++b)
        state.block_credit[dec.blocks[b].front()] =
            dec.block_size_class[b] == BlockSize::Small ? Rational(4, 3) : Rational(2);
    return state;
}

}  // namespace

TEST_SUITE_BEGIN("gluing");

TEST_CASE("swappable pairs of the first showcase") {
    GlueScenario scenario = swaps_showcase_a();
    EdgeSubgraph h = EdgeSubgraph::of(scenario.g, scenario.h_edges);
    auto triangle_pairs = enumerate_swappable_pairs(scenario.g, h, {6, 7, 8});
    REQUIRE(triangle_pairs.size() == 1);
    CHECK(triangle_pairs[0].u == 7);
    CHECK(triangle_pairs[0].w == 8);
    CHECK_FALSE(triangle_pairs[0].diagonal);
    CHECK_FALSE(triangle_pairs[0].good);

    auto quad_pairs = enumerate_swappable_pairs(scenario.g, h, {9, 10, 11, 12});
    REQUIRE(quad_pairs.size() == 1);
    CHECK(quad_pairs[0].u == 9);
    CHECK(quad_pairs[0].w == 11);
    CHECK(quad_pairs[0].diagonal);
    CHECK(quad_pairs[0].drop_edges.size() == 2);
}

TEST_CASE("good and bad pairs of the second showcase") {
    GlueScenario scenario = swaps_showcase_b();
    EdgeSubgraph h = EdgeSubgraph::of(scenario.g, scenario.h_edges);
    auto triangle_pairs = enumerate_swappable_pairs(scenario.g, h, {6, 7, 8});
    REQUIRE(triangle_pairs.size() == 2);
    CHECK(triangle_pairs[0].u == 6);
    CHECK(triangle_pairs[0].w == 7);
    CHECK(triangle_pairs[0].good);
    CHECK(triangle_pairs[1].u == 7);
    CHECK(triangle_pairs[1].w == 8);
    CHECK_FALSE(triangle_pairs[1].good);
    CHECK(triangle_pairs[1].target_block == 0);

    auto quad_pairs = enumerate_swappable_pairs(scenario.g, h, {9, 10, 11, 12});
    REQUIRE(quad_pairs.size() == 1);
    CHECK(quad_pairs[0].diagonal);
    CHECK(quad_pairs[0].good);
}

TEST_CASE("a good-pair merge swaps the triangle edge onto a cycle") {
    GlueScenario scenario = swaps_showcase_b();
    GlueState state = state_with_floors(scenario.g, scenario.h_edges);
    auto pairs = enumerate_swappable_pairs(scenario.g, state.h, {6, 7, 8});
    long long cost_before = state.h.cost;
    Rational credit_before = state.block_credit.at(0) + state.block_credit.at(6) +
                             state.block_credit.at(9);
    merge_via_good_pair(scenario.g, state, pairs[0]);
    // One block remains; net cost |C| - 1 with surplus at least two.
    BlockDecomposition dec = block_decomposition(state.h);
    CHECK(dec.block_count() == 1);
    CHECK(state.block_credit.at(dec.blocks[0].front()) ==
          credit_before - Rational(state.h.cost - cost_before));
    CHECK(state.block_credit.begin()->second >= Rational(2));
    // The swapped triangle edge 6-7 was discarded.
    CHECK_FALSE(state.h.contains(6));
    CHECK(is_two_edge_connected(state.h, false));
}

TEST_CASE("the auxiliary digraph of the directed-triangle example") {
    GlueScenario scenario = daux_example();
    EdgeSubgraph h = EdgeSubgraph::of(scenario.g, scenario.h_edges);
    AuxDigraph daux = build_daux(scenario.g, h);
    CHECK(daux.red_keys == std::vector<int>{0, 4, 8});
    CHECK(daux.green_keys == std::vector<int>{12});
    REQUIRE(daux.arcs.size() == 3);
    auto has_arc = [&](int from, int to) {
        for (const auto& arc : daux.arcs)
            if (arc.from_key == from && arc.to_key == to) return true;
        return false;
    };
    CHECK(has_arc(8, 4));
    CHECK(has_arc(4, 0));
    CHECK(has_arc(0, 8));
}

TEST_CASE("glue resolves the directed triangle by a red chain and finishes") {
    GlueScenario scenario = daux_example();
    GlueState state = state_with_floors(scenario.g, scenario.h_edges);
    std::vector<std::string> trace;
    EdgeSubgraph result = glue(scenario.g, state, &trace);
    CHECK(is_two_edge_connected(result, true));
    bool chained = false;
    for (const auto& line : trace) chained = chained || line.find("red-chain") != std::string::npos;
    CHECK(chained);
}

TEST_CASE("a red-green merge deletes the pendant triangle's swapped edge") {
    GlueScenario scenario = glue_run_example();
    GlueState state = state_with_floors(scenario.g, scenario.h_edges);
    std::vector<std::string> trace;
    EdgeSubgraph result = glue(scenario.g, state, &trace);
    CHECK(is_two_edge_connected(result, true));
    REQUIRE(!trace.empty());
    CHECK(trace[0].find("red-green") != std::string::npos);
    // The triangle's unit-edge 15-16 gets swapped out for the two edges into
    // the large 6-cycle.
    CHECK_FALSE(result.contains(15));
    CHECK(result.contains(22));
    CHECK(result.contains(23));
    // Final cost within cost(H) + credit - 2.
    long long h_cost = EdgeSubgraph::of(scenario.g, scenario.h_edges).cost;
    Rational credit = Rational(2) * Rational(3) + Rational(4, 3);
    CHECK(Rational(result.cost) <= Rational(h_cost) + credit - Rational(2));
}

TEST_CASE("two parallel block-graph edges make a two-cycle merge") {
    // Two all-unit 4-cycles with two connecting edges.
    MapInstance g = make(8, {{0, 1, 1},
                             {1, 2, 1},
                             {2, 3, 1},
                             {3, 0, 1},
                             {4, 5, 1},
                             {5, 6, 1},
                             {6, 7, 1},
                             {7, 4, 1},
                             {0, 4, 1},
                             {2, 6, 1}});
    GlueState state = state_with_floors(g, {0, 1, 2, 3, 4, 5, 6, 7});
    merge_large_cycle(g, state);
    CHECK(state.h.contains(8));
    CHECK(state.h.contains(9));
    CHECK(block_decomposition(state.h).block_count() == 1);
    CHECK(state.block_credit.begin()->second == Rational(2));
}

TEST_CASE("single-block input returns unchanged") {
    MapInstance g = make(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 2, 1}});
    GlueState state = state_with_floors(g, {0, 1, 2, 3});
    EdgeSubgraph result = glue(g, state);
    CHECK(result.edge_ids == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("the stranded instance aborts gluing by design") {
    MapInstance g = gen_g1();
    std::vector<int> h_edges;
    for (int i = 0; i < 12; ++i) h_edges.push_back(i);  // the three 4-cycles
    GlueState state = state_with_floors(g, h_edges);
    CHECK_THROWS_AS(glue(g, std::move(state)), theorem_violation);
}

TEST_CASE("glue output on seeded well-structured instances meets the credit bound") {
    int exercised = 0;
    for (int seed = 1; seed <= 400 && exercised < 50; ++seed) {
        MapInstance g = gen_random(12 + seed % 3, 0.35, 81000 + seed);
        if (!is_well_structured(g)) continue;
        ++exercised;
        D2Result d2 = normalize_d2(g, compute_d2(g));
        BridgeCoverResult covered = bridge_cover(g, d2);
        Rational credit;
        for (const auto& [k, v] : covered.block_credit) credit += v;
        long long h_cost = covered.h.cost;
        EdgeSubgraph result = glue(g, GlueState{covered.h, covered.block_credit});
        CHECK(is_two_edge_connected(result, true));
        CHECK(Rational(result.cost) <= Rational(h_cost) + credit - Rational(2));
        // Zero-edges are never discarded and the solution stays inside G.
        for (int id : g.zero_edges()) CHECK(result.contains(id));
    }
    CHECK(exercised >= 30);
}

TEST_SUITE_END();
