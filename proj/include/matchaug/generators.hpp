#pragma once

#include <cstdint>

#include "matchaug/graph.hpp"

namespace matchaug {

// splitmix64; bit-stable across platforms so seeded fixtures never drift.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = ~0ULL - ~0ULL % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

// The tight family: an all-unit 6-cycle root block plus `copies` gadgets,
// each an alternating 6-cycle of cost three tied to the root by three
// unit-edges. cost(D2) <= 6 + 3*copies while opt >= 6 + 5*copies.
MapInstance gen_tight_s3(int copies);

// The 12-node instance whose bridgeless 2-edge cover strands the gluing
// step: three alternating 4-cycles, the middle one separating the others.
MapInstance gen_g1();

// Root 6-cycle of cost three plus k gadgets of 8 nodes / 11 edges whose two
// 4-cycles leave a cheap cover far from any 2-ECSS: opt >= 7k + 3 against
// cost(D2) <= 4k + 3. g2 plants the separating 4-cycle shape, g3 the
// two-attachment double-cycle shape.
MapInstance gen_g2(int k);
MapInstance gen_g3(int k);

// Random valid MAP instance: a random partial matching of zero-edges, then
// random unit-edges until the graph is 2-edge-connected and the density
// target is met. Deterministic per (n, density, seed).
MapInstance gen_random(int n, double density, std::uint64_t seed);

// Random instance with planted obstructions driven by the seed: blobs joined
// through cut nodes, S2 pairs, parallel edges, redundant 4-cycles and the
// 8-node gadget, for decomposition stress tests.
MapInstance gen_planted(std::uint64_t seed);

}  // namespace matchaug
