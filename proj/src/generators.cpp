#include "matchaug/generators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>

#include "matchaug/errors.hpp"

namespace matchaug {

namespace {

void add(MapInstance& g, int u, int v, int cost) { g.edges.push_back({u, v, cost}); }

// Alternating 4-cycle a-b-c-d-a with zero-edges ab and cd.
void add_alternating_quad(MapInstance& g, int a, int b, int c, int d) {
    add(g, a, b, 0);
    add(g, b, c, 1);
    add(g, c, d, 0);
    add(g, d, a, 1);
}

}  // namespace

MapInstance gen_tight_s3(int copies) {
    if (copies < 1) throw validation_error("gen_tight_s3 requires copies >= 1");
    MapInstance g;
    g.node_count = 6 + 6 * copies;
    for (int i = 0; i < 6; ++i) add(g, i, (i + 1) % 6, 1);  // root 6-cycle, all unit
    for (int j = 0; j < copies; ++j) {
        int base = 6 + 6 * j;
        for (int i = 0; i < 6; ++i) add(g, base + i, base + (i + 1) % 6, i % 2 == 0 ? 0 : 1);
        add(g, 0, base + 0, 1);
        add(g, 2, base + 2, 1);
        add(g, 4, base + 4, 1);
    }
    return g;
}

MapInstance gen_g1() {
    MapInstance g;
    g.node_count = 12;
    // Per group i: u=4i, v=4i+1, w=4i+2, x=4i+3.
    auto u = [](int i) { return 4 * i; };
    auto v = [](int i) { return 4 * i + 1; };
    auto w = [](int i) { return 4 * i + 2; };
    auto x = [](int i) { return 4 * i + 3; };
    for (int i = 0; i < 3; ++i) {
        add(g, u(i), v(i), 1);
        add(g, v(i), w(i), 0);
        add(g, w(i), x(i), 1);
        add(g, x(i), u(i), 0);
    }
    add(g, v(0), x(0), 1);
    add(g, u(0), u(1), 1);
    add(g, w(0), w(1), 1);
    add(g, u(1), x(2), 1);
    add(g, v(1), x(2), 1);
    add(g, w(1), v(2), 1);
    add(g, u(2), w(2), 1);
    return g;
}

namespace {

MapInstance gen_g23(int k, bool variant_three) {
    if (k < 1) throw validation_error("gadget families require k >= 1");
    MapInstance g;
    g.node_count = 6 + 8 * k;
    for (int i = 0; i < 6; ++i) add(g, i, (i + 1) % 6, i % 2 == 0 ? 0 : 1);  // root cycle, cost 3
    for (int j = 0; j < k; ++j) {
        int b = 6 + 8 * j;
        auto n = [&](int idx) { return b + idx - 1; };  // v1..v8
        add(g, n(1), n(2), 1);
        add(g, n(2), n(3), 0);
        add(g, n(3), n(4), 1);
        add(g, n(4), n(1), 0);
        add(g, n(5), n(6), 1);
        add(g, n(6), n(7), 0);
        add(g, n(7), n(8), 1);
        add(g, n(8), n(5), 0);
        if (!variant_three) {
            add(g, n(1), n(7), 1);
            add(g, n(2), n(5), 1);
            add(g, n(3), n(8), 1);
            add(g, n(1), 0, 1);  // to w1
            add(g, n(3), 3, 1);  // to w4
        } else {
            add(g, n(1), n(5), 1);
            add(g, n(2), n(8), 1);
            add(g, n(4), n(6), 1);
            add(g, n(4), 0, 1);
            add(g, n(8), 3, 1);
        }
    }
    return g;
}

}  // namespace

MapInstance gen_g2(int k) { return gen_g23(k, false); }

MapInstance gen_g3(int k) { return gen_g23(k, true); }

MapInstance gen_random(int n, double density, std::uint64_t seed) {
    if (n < 4) throw validation_error("gen_random requires n >= 4");
    if (!(density > 0.0) || density > 1.0) throw validation_error("density must be in (0, 1]");
    Rng rng(seed);
    MapInstance g;
    g.node_count = n;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    std::set<std::pair<int, int>> used;
    int zero_pairs = n / 4;
    for (int i = 0; i < zero_pairs; ++i) {
        int a = perm[2 * i], b = perm[2 * i + 1];
        add(g, a, b, 0);
        used.insert(std::minmax(a, b));
    }
    long long target = std::llround(density * n * (n - 1) / 2.0);
    if (target < n) target = n;
    long long units = 0;
    long long attempts = 0;
    long long check_every = n <= 64 ? 1 : 32;
    while (true) {
        if (++attempts > 400LL * n + 40LL * target) {
            if (is_two_edge_connected_instance(g)) break;
            throw validation_error("gen_random failed to reach 2-edge-connectivity");
        }
        int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n));
        if (a == b) continue;
        auto key = std::minmax(a, b);
        if (used.count({key.first, key.second})) continue;
        used.insert({key.first, key.second});
        add(g, a, b, 1);
        ++units;
        if (units >= target && units % check_every == 0 && is_two_edge_connected_instance(g)) break;
    }
    assert(validate_instance(g, true).ok());
    return g;
}

MapInstance gen_planted(std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        Rng rng(seed * 2654435761ULL + attempt + 1);
        // Small 2EC blobs to hang obstructions between.
        auto blob = [&](MapInstance& g, int size) {
            int base = g.node_count;
            g.node_count += size;
            for (int i = 0; i < size; ++i) add(g, base + i, base + (i + 1) % size, 1);
            if (size >= 5 && rng.below(2) == 0) add(g, base, base + 2, 1);
            return base;
        };
        MapInstance g;
        int b1 = blob(g, 5 + static_cast<int>(rng.below(2)));
        int b2 = blob(g, 5 + static_cast<int>(rng.below(2)));
        int kind = static_cast<int>(rng.below(6));
        switch (kind) {
            case 0: {  // extra cycle pinned at a single node of blob 1
                int size = 4 + static_cast<int>(rng.below(3));
                int base = g.node_count;
                g.node_count += size - 1;
                add(g, b1, base, 1);
                for (int i = 0; i + 2 < size - 1; ++i) add(g, base + i, base + i + 1, 1);
                add(g, base + size - 3, base + size - 2, 1);
                add(g, base + size - 2, b1, 1);
                add(g, b1 + 1, b2, 1);
                add(g, b1 + 2, b2 + 1, 1);
                break;
            }
            case 1: {  // parallel unit pair inside blob 1, plus a bridge pair of edges
                add(g, b1, b1 + 1, 1);
                add(g, b1 + 2, b2, 1);
                add(g, b1 + 3, b2 + 1, 1);
                break;
            }
            case 2: {  // zero-cost S2 between the blobs
                int u = g.node_count++, v = g.node_count++;
                add(g, u, v, 0);
                add(g, u, b1, 1);
                add(g, v, b1 + 1, 1);
                add(g, u, b2, 1);
                add(g, v, b2 + 1, 1);
                break;
            }
            case 3: {  // separating alternating 4-cycle (S34 shape)
                int c = g.node_count;
                g.node_count += 4;
                add_alternating_quad(g, c, c + 1, c + 2, c + 3);
                add(g, c, b1, 1);
                add(g, c + 2, b1 + 1, 1);
                add(g, c + 1, b2, 1);
                add(g, c + 3, b2 + 1, 1);
                break;
            }
            case 4: {  // redundant 4-cycle hanging off blob 1
                int c = g.node_count;
                g.node_count += 4;
                add_alternating_quad(g, c, c + 1, c + 2, c + 3);
                add(g, c, b1, 1);
                add(g, c + 2, b1 + 1, 1);
                add(g, b1 + 2, b2, 1);
                add(g, b1 + 3, b2 + 1, 1);
                break;
            }
            default: {  // 8-node double-quad gadget with two attachments
                int c = g.node_count;
                g.node_count += 8;
                add_alternating_quad(g, c + 1, c + 0, c + 2, c + 3);    // zeros c1c0, c2c3
                add_alternating_quad(g, c + 5, c + 4, c + 6, c + 7);
                add(g, c + 0, c + 4, 1);
                add(g, c + 1, c + 5, 1);
                add(g, c + 3, c + 7, 1);
                add(g, c + 2, b1, 1);
                add(g, c + 6, b1 + 1, 1);
                add(g, b1 + 2, b2, 1);
                add(g, b1 + 3, b2 + 1, 1);
                break;
            }
        }
        // Sprinkle a few extra unit edges and a zero-edge when legal.
        std::set<std::pair<int, int>> used;
        for (const Edge& e : g.edges) used.insert(std::minmax(e.u, e.v));
        int extras = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < extras; ++i) {
            int a = static_cast<int>(rng.below(g.node_count));
            int b = static_cast<int>(rng.below(g.node_count));
            if (a == b) continue;
            auto key = std::minmax(a, b);
            if (used.count({key.first, key.second})) continue;
            used.insert({key.first, key.second});
            add(g, a, b, 1);
        }
        if (g.node_count >= 12 && validate_instance(g, true).ok()) return g;
    }
}

}  // namespace matchaug
