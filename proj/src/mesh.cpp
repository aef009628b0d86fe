#include "mesh.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace uipt {

VertexId HalfEdgeMesh::new_vertex(std::int32_t lab, std::int8_t col) {
    if (label_.size() >= static_cast<std::size_t>(std::numeric_limits<VertexId>::max()) - 2)
        throw std::length_error("HalfEdgeMesh: vertex index overflow");
    label_.push_back(lab);
    color_.push_back(col);
    return static_cast<VertexId>(label_.size() - 1);
}

HalfEdge HalfEdgeMesh::new_pair(VertexId a, VertexId b) {
    if (a == b) throw std::logic_error("HalfEdgeMesh: loop edge");
    if (origin_.size() >= static_cast<std::size_t>(std::numeric_limits<HalfEdge>::max()) - 4)
        throw std::length_error("HalfEdgeMesh: half-edge index overflow");
    const HalfEdge h = static_cast<HalfEdge>(origin_.size());
    origin_.push_back(a);
    origin_.push_back(b);
    twin_.push_back(h + 1);
    twin_.push_back(h);
    next_.insert(next_.end(), {kNoEdge, kNoEdge});
    prev_.insert(prev_.end(), {kNoEdge, kNoEdge});
    dead_.insert(dead_.end(), {0, 0});
    n_alive_ += 2;
    return h;
}

void HalfEdgeMesh::reserve(long vertices, long halfedges) {
    label_.reserve(static_cast<std::size_t>(vertices));
    color_.reserve(static_cast<std::size_t>(vertices));
    origin_.reserve(static_cast<std::size_t>(halfedges));
    twin_.reserve(static_cast<std::size_t>(halfedges));
    next_.reserve(static_cast<std::size_t>(halfedges));
    prev_.reserve(static_cast<std::size_t>(halfedges));
    dead_.reserve(static_cast<std::size_t>(halfedges));
}

HalfEdge HalfEdgeMesh::init_root() {
    const VertexId r = new_vertex(0, -1);
    const VertexId a = new_vertex(1, -1);
    const VertexId b = new_vertex(1, -1);
    const HalfEdge ra = new_pair(r, a);  // twin: (a->r)
    const HalfEdge ab = new_pair(a, b);
    const HalfEdge br = new_pair(b, r);
    link(ra, ab);
    link(ab, br);
    link(br, ra);
    // Outer cycle: (a->r), (r->b), (b->a).
    link(twin(ra), twin(br));
    link(twin(br), twin(ab));
    link(twin(ab), twin(ra));
    return twin(ra);  // ends at the root
}

HalfEdge HalfEdgeMesh::init_polygon(long m) {
    if (m < 0) throw std::invalid_argument("init_polygon: negative m");
    const long n = m + 2;
    std::vector<VertexId> vs;
    vs.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) vs.push_back(new_vertex(0, -1));
    std::vector<HalfEdge> inner;
    inner.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) inner.push_back(new_pair(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>((i + 1) % n)]));
    for (long i = 0; i < n; ++i) {
        link(inner[static_cast<std::size_t>(i)], inner[static_cast<std::size_t>((i + 1) % n)]);
        link(twin(inner[static_cast<std::size_t>((i + 1) % n)]), twin(inner[static_cast<std::size_t>(i)]));
    }
    return inner.front();
}

HalfEdge HalfEdgeMesh::attach_new(HalfEdge h, std::int32_t label, std::int8_t color) {
    const VertexId u = origin(h);
    const VertexId v = dest(h);
    const HalfEdge ph = prev(h);
    const HalfEdge nh = next(h);
    const VertexId w = new_vertex(label, color);
    const HalfEdge s1 = new_pair(v, w);
    const HalfEdge s2 = new_pair(w, u);
    link(h, s1);
    link(s1, s2);
    link(s2, h);
    link(ph, twin(s2));       // (u->w)
    link(twin(s2), twin(s1));  // (w->v)
    link(twin(s1), nh);
    return twin(s1);
}

HalfEdgeMesh::BackResult HalfEdgeMesh::attach_back(HalfEdge h, long k, bool side_a) {
    if (k < 1) throw std::invalid_argument("attach_back: k must be >= 1");
    const VertexId u = origin(h);
    const VertexId v = dest(h);
    BackResult res{};
    if (side_a) {
        // Arc: v = a_0, a_1, ..., a_{k-1} removed; y = a_k.
        HalfEdge nk = next(h);
        for (long i = 1; i < k; ++i) nk = next(nk);
        const VertexId y = dest(nk);
        if (y == u) throw std::invalid_argument("attach_back: k exceeds boundary");
        const HalfEdge n1 = next(h);
        const HalfEdge nk1 = next(nk);
        const HalfEdge ph = prev(h);
        const HalfEdge s1 = new_pair(v, y);
        const HalfEdge s2 = new_pair(y, u);
        link(h, s1);
        link(s1, s2);
        link(s2, h);
        link(nk, twin(s1));  // hole: n1 ... nk, (y->v)
        link(twin(s1), n1);
        link(ph, twin(s2));  // open: ..., (u->y), old next(nk)
        link(twin(s2), nk1);
        res = {twin(s1), twin(s2), y};
    } else {
        // Arc: u = b_0, b_1, ..., b_{k-1} removed; y = b_k.
        HalfEdge pk = prev(h);
        for (long i = 1; i < k; ++i) pk = prev(pk);
        const VertexId y = origin(pk);
        if (y == v) throw std::invalid_argument("attach_back: k exceeds boundary");
        const HalfEdge p1 = prev(h);
        const HalfEdge pk1 = prev(pk);
        const HalfEdge nh = next(h);
        const HalfEdge s1 = new_pair(v, y);
        const HalfEdge s2 = new_pair(y, u);
        link(h, s1);
        link(s1, s2);
        link(s2, h);
        link(p1, twin(s2));  // hole: pk ... p1, (u->y)
        link(twin(s2), pk);
        link(pk1, twin(s1));  // open: ..., (y->v), old next(h)
        link(twin(s1), nh);
        res = {twin(s2), twin(s1), y};
    }
    return res;
}

void HalfEdgeMesh::glue_2gon(HalfEdge h) {
    const HalfEdge h2 = next(h);
    if (h2 == h || next(h2) != h) throw std::invalid_argument("glue_2gon: face is not a 2-gon");
    const HalfEdge t1 = twin(h);
    const HalfEdge t2 = twin(h2);
    if (t1 == h2 || t2 == h) throw std::logic_error("glue_2gon: degenerate sphere closure");
    twin_[static_cast<std::size_t>(t1)] = t2;
    twin_[static_cast<std::size_t>(t2)] = t1;
    dead_[static_cast<std::size_t>(h)] = 1;
    dead_[static_cast<std::size_t>(h2)] = 1;
    n_alive_ -= 2;
}

long HalfEdgeMesh::cycle_length(HalfEdge h) const {
    long n = 1;
    for (HalfEdge c = next(h); c != h; c = next(c)) ++n;
    return n;
}

namespace {
struct Csr {
    std::vector<std::int64_t> offset;
    std::vector<VertexId> adj;
};

Csr build_adjacency(const HalfEdgeMesh& mesh, long n_halfedges_total, long n_vertices,
                    const std::vector<std::uint8_t>* dead, const std::vector<VertexId>& origin,
                    const std::vector<HalfEdge>& twin) {
    Csr csr;
    csr.offset.assign(static_cast<std::size_t>(n_vertices) + 1, 0);
    for (long h = 0; h < n_halfedges_total; ++h)
        if (!(*dead)[static_cast<std::size_t>(h)]) ++csr.offset[static_cast<std::size_t>(origin[static_cast<std::size_t>(h)]) + 1];
    for (std::size_t i = 1; i < csr.offset.size(); ++i) csr.offset[i] += csr.offset[i - 1];
    csr.adj.resize(static_cast<std::size_t>(csr.offset.back()));
    std::vector<std::int64_t> cursor(csr.offset.begin(), csr.offset.end() - 1);
    for (long h = 0; h < n_halfedges_total; ++h) {
        if ((*dead)[static_cast<std::size_t>(h)]) continue;
        const VertexId from = origin[static_cast<std::size_t>(h)];
        const VertexId to = origin[static_cast<std::size_t>(twin[static_cast<std::size_t>(h)])];
        csr.adj[static_cast<std::size_t>(cursor[static_cast<std::size_t>(from)]++)] = to;
    }
    return csr;
}
}  // namespace

std::vector<std::int32_t> HalfEdgeMesh::bfs_distances(VertexId source) const {
    return bfs_distances_multi({source});
}

std::vector<std::int32_t> HalfEdgeMesh::bfs_distances_multi(const std::vector<VertexId>& sources) const {
    const long nv = n_vertices();
    Csr csr = build_adjacency(*this, static_cast<long>(origin_.size()), nv, &dead_, origin_, twin_);
    std::vector<std::int32_t> dist(static_cast<std::size_t>(nv), -1);
    std::vector<VertexId> queue;
    queue.reserve(static_cast<std::size_t>(nv));
    for (VertexId s : sources) {
        if (dist[static_cast<std::size_t>(s)] == -1) {
            dist[static_cast<std::size_t>(s)] = 0;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId vtx = queue[head];
        const std::int32_t d = dist[static_cast<std::size_t>(vtx)];
        for (std::int64_t i = csr.offset[static_cast<std::size_t>(vtx)]; i < csr.offset[static_cast<std::size_t>(vtx) + 1]; ++i) {
            const VertexId to = csr.adj[static_cast<std::size_t>(i)];
            if (dist[static_cast<std::size_t>(to)] == -1) {
                dist[static_cast<std::size_t>(to)] = d + 1;
                queue.push_back(to);
            }
        }
    }
    return dist;
}

std::string HalfEdgeMesh::validate(const std::vector<HalfEdge>& open_faces) const {
    const long nh = static_cast<long>(origin_.size());
    for (long h = 0; h < nh; ++h) {
        if (dead_[static_cast<std::size_t>(h)]) continue;
        const HalfEdge t = twin_[static_cast<std::size_t>(h)];
        if (t < 0 || t >= nh || dead_[static_cast<std::size_t>(t)])
            return "twin out of range or dead at half-edge " + std::to_string(h);
        if (t == h) return "twin fixed point at half-edge " + std::to_string(h);
        if (twin_[static_cast<std::size_t>(t)] != h) return "twin not involutive at half-edge " + std::to_string(h);
        if (origin(h) == dest(h)) return "loop edge at half-edge " + std::to_string(h);
        const HalfEdge n = next_[static_cast<std::size_t>(h)];
        if (n < 0 || n >= nh || dead_[static_cast<std::size_t>(n)])
            return "next out of range or dead at half-edge " + std::to_string(h);
        if (prev_[static_cast<std::size_t>(n)] != h) return "next/prev mismatch at half-edge " + std::to_string(h);
        if (origin(n) != dest(h)) return "next does not continue at half-edge " + std::to_string(h);
    }
    // Face census via next-orbits.
    std::vector<std::uint8_t> open_mark(static_cast<std::size_t>(nh), 0);
    for (HalfEdge h : open_faces) {
        if (dead_[static_cast<std::size_t>(h)]) return "open face handle is dead";
        HalfEdge c = h;
        do {
            open_mark[static_cast<std::size_t>(c)] = 1;
            c = next(c);
        } while (c != h);
    }
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(nh), 0);
    long faces = 0;
    for (long h = 0; h < nh; ++h) {
        if (dead_[static_cast<std::size_t>(h)] || seen[static_cast<std::size_t>(h)]) continue;
        ++faces;
        long len = 0;
        bool is_open = false;
        HalfEdge c = static_cast<HalfEdge>(h);
        do {
            seen[static_cast<std::size_t>(c)] = 1;
            is_open = is_open || open_mark[static_cast<std::size_t>(c)] != 0;
            ++len;
            c = next(c);
        } while (c != h);
        if (!is_open && len != 3)
            return "interior face of degree " + std::to_string(len) + " at half-edge " + std::to_string(h);
    }
    // Simplicity of each open cycle.
    for (HalfEdge h : open_faces) {
        std::vector<VertexId> verts;
        HalfEdge c = h;
        do {
            verts.push_back(origin(c));
            c = next(c);
        } while (c != h);
        std::vector<VertexId> sorted = verts;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return "open cycle revisits a vertex";
    }
    const long euler = n_vertices() - n_edges() + faces;
    if (euler != 2)
        return "Euler relation violated: V=" + std::to_string(n_vertices()) + " E=" + std::to_string(n_edges()) +
               " F=" + std::to_string(faces);
    return "";
}

void HalfEdgeMesh::export_edge_list(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_edge_list: cannot open " + path);
    out << n_vertices() << " " << n_edges() << "\n";
    const long nh = static_cast<long>(origin_.size());
    for (long h = 0; h < nh; ++h) {
        if (dead_[static_cast<std::size_t>(h)]) continue;
        if (twin_[static_cast<std::size_t>(h)] < h) continue;  // one line per pair
        out << origin(static_cast<HalfEdge>(h)) << " " << dest(static_cast<HalfEdge>(h)) << "\n";
    }
}

void HalfEdgeMesh::export_vertex_csv(const std::string& path, VertexId source) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_vertex_csv: cannot open " + path);
    const auto dist = bfs_distances(source);
    out << "id,distance,color\n";
    for (long v = 0; v < n_vertices(); ++v) {
        out << v << "," << dist[static_cast<std::size_t>(v)] << ",";
        const std::int8_t c = color_[static_cast<std::size_t>(v)];
        out << (c < 0 ? "" : (c == 1 ? "black" : "white")) << "\n";
    }
}

}  // namespace uipt
