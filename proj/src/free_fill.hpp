#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mesh.hpp"
#include "rng.hpp"

namespace uipt {

// Triangulates the open face holding half-edge h with a free triangulation
// of the matching polygon, by recursive peeling with an explicit work stack
// (splits push two independent sub-polygons). Returns the number of internal
// vertices added. `budget` counts created vertices plus peel events and is
// decremented; exhausting it throws BudgetExceeded.
std::int64_t fill_free(HalfEdgeMesh& mesh, HalfEdge h, long m, Pcg64& rng, std::int64_t& budget,
                       std::int8_t color = -1);

// A whole free triangulation of an (m+2)-gon as its own mesh.
struct FreeSample {
    HalfEdgeMesh mesh;
    HalfEdge outer;             // the persistent complement face
    std::vector<VertexId> boundary;  // the original polygon vertices
    std::int64_t internal_vertices = 0;
};
FreeSample sample_free_full(long m, Pcg64& rng, std::int64_t budget = 1'000'000'000);

// A vertex-marked free triangulation of an (m+2)-gon: peels with the marked
// step law until the marked vertex appears, then completes the remaining
// polygon and all detached holes as unmarked free triangulations.
struct MarkedSample {
    HalfEdgeMesh mesh;
    HalfEdge outer;
    std::vector<VertexId> boundary;
    VertexId marked = -1;
    std::int64_t internal_vertices = 0;
    std::int32_t mark_height = -1;  // distance from the marked vertex to the boundary
};
MarkedSample sample_marked_full(long m, Pcg64& rng, std::int64_t budget = 1'000'000'000);

// Size-only marked sampling: the internal vertex count |T| under the marked
// law, never building the mesh (hole and remainder sizes drawn from the
// free size law).
std::int64_t sample_marked_size(long m, Pcg64& rng, long n_star = 10000);

// Histogram of heights (distance to the polygon boundary) of the internal
// vertices of one free sample of an (m+2)-gon, m >= 2. hist[d-1] counts
// internal vertices at height d.
std::vector<std::int64_t> height_profile(long m, Pcg64& rng, std::int64_t budget = 1'000'000'000);

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded() : std::runtime_error("step budget exceeded") {}
};

}  // namespace uipt
