#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uipt {

using HalfEdge = std::int32_t;
using VertexId = std::int32_t;

constexpr HalfEdge kNoEdge = -1;

// Index-based half-edge mesh of a triangulated disc under construction.
// Faces are next-cycles; interior faces are triangles; one or more "open"
// faces (the outer face, plus holes detached by peel moves) are the cycles
// still being consumed. Type II: double edges allowed, loops never.
//
// Orientation conventions, fixed once:
//  * dest(h) = origin(twin(h)); an open-face cycle h0 -> next(h0) -> ...
//    walks the frontier with the unexplored region on the cycle's side.
//  * attach_* operate on a half-edge h = (u -> v) of an open face. The peel
//    cursor is v; "side A" arcs run v, dest(next(h)), ... ("counterclockwise"
//    past v) and "side B" arcs run u, origin(prev(h)), ... the other way.
class HalfEdgeMesh {
  public:
    struct BackResult {
        HalfEdge hole;  // a half-edge on the detached (k+1)-gon cycle
        HalfEdge open;  // a half-edge on the surviving open cycle, ending at the new cursor
        VertexId y;     // the reattachment vertex (stays on the open cycle)
    };

    // One triangle, frontier of size 3: the root vertex labeled 0 and its
    // two neighbors labeled 1. Returns the open-face half-edge ending at
    // the root (the initial cursor position).
    HalfEdge init_root();

    // A bare (m+2)-gon, all labels 0: two facing cycles, the inner one to be
    // triangulated. Returns a half-edge of the inner (open) cycle; the outer
    // ring persists as the complement face.
    HalfEdge init_polygon(long m);

    // Glue a new triangle with a fresh vertex onto open-face edge h.
    // Returns the open-face half-edge ending at the old cursor dest(h).
    HalfEdge attach_new(HalfEdge h, std::int32_t label = -1, std::int8_t color = -1);

    // Glue a triangle from edge h to the boundary vertex k steps along the
    // chosen side, detaching a (k+1)-gon hole. Requires k+2 <= cycle length.
    BackResult attach_back(HalfEdge h, long k, bool side_a);

    // Identify the two edges of a 2-gon face (an empty gluing).
    void glue_2gon(HalfEdge h);

    VertexId origin(HalfEdge h) const { return origin_[static_cast<std::size_t>(h)]; }
    VertexId dest(HalfEdge h) const { return origin_[static_cast<std::size_t>(twin_[static_cast<std::size_t>(h)])]; }
    HalfEdge twin(HalfEdge h) const { return twin_[static_cast<std::size_t>(h)]; }
    HalfEdge next(HalfEdge h) const { return next_[static_cast<std::size_t>(h)]; }
    HalfEdge prev(HalfEdge h) const { return prev_[static_cast<std::size_t>(h)]; }
    bool dead(HalfEdge h) const { return dead_[static_cast<std::size_t>(h)] != 0; }

    long n_vertices() const { return static_cast<long>(label_.size()); }
    long n_halfedges_alive() const { return n_alive_; }
    long n_edges() const { return n_alive_ / 2; }
    long total_halfedges() const { return static_cast<long>(origin_.size()); }  // including dead slots
    long cycle_length(HalfEdge h) const;

    // Test support: deliberately corrupt the structure.
    void debug_set_twin(HalfEdge h, HalfEdge t) { twin_[static_cast<std::size_t>(h)] = t; }

    std::int32_t label(VertexId v) const { return label_[static_cast<std::size_t>(v)]; }
    void set_label(VertexId v, std::int32_t d) { label_[static_cast<std::size_t>(v)] = d; }
    std::int8_t color(VertexId v) const { return color_[static_cast<std::size_t>(v)]; }
    void set_color(VertexId v, std::int8_t c) { color_[static_cast<std::size_t>(v)] = c; }

    // Exact graph distances from source over alive edges (-1 if unreachable).
    std::vector<std::int32_t> bfs_distances(VertexId source) const;
    // Multi-source variant; sources get distance 0.
    std::vector<std::int32_t> bfs_distances_multi(const std::vector<VertexId>& sources) const;

    // Structural audit: twin involution without fixed points, next/prev
    // inverses, no loops, interior faces of degree 3 (cycles through the
    // given open handles may have any length), Euler relation with the open
    // faces counted, and simplicity of each open cycle. Returns an empty
    // string when valid, else the first violation.
    std::string validate(const std::vector<HalfEdge>& open_faces) const;

    // First line "V E", then one "u v" line per edge pair (alive only).
    void export_edge_list(const std::string& path) const;
    // CSV: id,distance,color with distance from a fresh BFS at `source`.
    void export_vertex_csv(const std::string& path, VertexId source) const;

    void reserve(long vertices, long halfedges);

  private:
    VertexId new_vertex(std::int32_t lab, std::int8_t col);
    HalfEdge new_pair(VertexId a, VertexId b);  // returns (a->b); twin is (b->a)
    void link(HalfEdge a, HalfEdge b) {
        next_[static_cast<std::size_t>(a)] = b;
        prev_[static_cast<std::size_t>(b)] = a;
    }

    std::vector<VertexId> origin_;
    std::vector<HalfEdge> twin_, next_, prev_;
    std::vector<std::uint8_t> dead_;
    std::vector<std::int32_t> label_;
    std::vector<std::int8_t> color_;
    long n_alive_ = 0;
};

}  // namespace uipt
