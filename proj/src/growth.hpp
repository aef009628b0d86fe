#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mesh.hpp"
#include "rng.hpp"

namespace uipt {

// Peeling growth of the uniform infinite triangulation from the root
// triangle, in ordered (layered) discipline: the cursor vertex keeps the
// peel edge until a detachment removes it, and then advances to the first
// surviving vertex along the removed arc's direction. Layer r is complete
// at the first step after which no frontier vertex has label < r; the
// frontier labels then all equal r (cross-checked against BFS in tests).
//
// full mode builds the half-edge mesh and fills every detached hole with a
// free triangulation; skeleton mode keeps only the frontier label ring and
// draws hole sizes from the free size law.

struct GrowthConfig {
    long r_max = 1;
    bool full = false;
    std::uint64_t max_steps = 0;        // optional hard step cap (0 = none)
    std::int64_t budget = 1'000'000'000;  // elementary-step budget (steps + fill vertices)
    long n_star = 10000;                // size-sampler crossover (skeleton fills)
    bool record_steps = false;
    long start_polygon_m = -1;  // if >= 0, start from a bare (m+2)-gon, labels 0
};

struct StepRecord {
    std::uint64_t t;
    long m_after;
    long x;
    std::int64_t y;
    long layer;
};

struct LayerRecord {
    long r;
    std::uint64_t t;       // T_r
    long m;                // boundary parameter at T_r
    std::uint64_t hull;    // vertices in the hull of radius r
    std::uint64_t ball;    // vertices within distance r (full mode; 0 otherwise)
    double vt2, vt3;       // running sums of |X|^2, |X|^3 at T_r
};

struct GrowthResult {
    std::vector<LayerRecord> layers;
    std::vector<StepRecord> steps;  // only when record_steps
    std::uint64_t total_steps = 0;
    std::uint64_t hull_volume = 0;  // total vertices generated
    bool completed = false;
    bool budget_exceeded = false;
    std::optional<HalfEdgeMesh> mesh;  // full mode
    HalfEdge outer = kNoEdge;          // open-face handle of the final frontier
    std::vector<VertexId> frontier_vertices;  // frontier at termination
};

GrowthResult grow_uipt(const GrowthConfig& cfg, RandomSource src);

}  // namespace uipt
