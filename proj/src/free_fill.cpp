#include "free_fill.hpp"

#include <stdexcept>

#include "laws.hpp"
#include "sampling.hpp"

namespace uipt {

namespace {
struct Pending {
    HalfEdge h;
    long m;
};

void charge(std::int64_t& budget, std::int64_t amount = 1) {
    budget -= amount;
    if (budget < 0) throw BudgetExceeded();
}
}  // namespace

std::int64_t fill_free(HalfEdgeMesh& mesh, HalfEdge h, long m, Pcg64& rng, std::int64_t& budget, std::int8_t color) {
    std::int64_t added = 0;
    std::vector<Pending> stack;
    stack.push_back({h, m});
    while (!stack.empty()) {
        Pending cur = stack.back();
        stack.pop_back();
        for (;;) {
            charge(budget);
            const long ev = sample_free_peel(cur.m, rng);
            if (ev == -1) {  // terminal gluing of a 2-gon
                mesh.glue_2gon(cur.h);
                break;
            }
            if (ev == 0) {
                cur.h = mesh.attach_new(cur.h, -1, color);
                ++cur.m;
                ++added;
                continue;
            }
            // Split at x_i: detach the (i+1)-gon on side A; both parts pend.
            const auto back = mesh.attach_back(cur.h, ev, true);
            stack.push_back({back.hole, ev - 1});
            cur = {back.open, cur.m - ev};
        }
    }
    return added;
}

FreeSample sample_free_full(long m, Pcg64& rng, std::int64_t budget) {
    FreeSample s;
    HalfEdge inner = s.mesh.init_polygon(m);
    s.outer = s.mesh.twin(inner);
    for (VertexId v = 0; v < s.mesh.n_vertices(); ++v) s.boundary.push_back(v);
    s.internal_vertices = fill_free(s.mesh, inner, m, rng, budget);
    return s;
}

MarkedSample sample_marked_full(long m, Pcg64& rng, std::int64_t budget) {
    MarkedSample s;
    HalfEdge h = s.mesh.init_polygon(m);
    s.outer = s.mesh.twin(h);
    for (VertexId v = 0; v < s.mesh.n_vertices(); ++v) s.boundary.push_back(v);

    long cur_m = m;
    for (;;) {
        charge(budget);
        const MarkedStep step = sample_marked_step(cur_m, rng);
        if (step.kind == MarkedStep::NewUnmarked) {
            h = s.mesh.attach_new(h);
            ++cur_m;
            ++s.internal_vertices;
            continue;
        }
        if (step.kind == MarkedStep::NewMarked) {
            h = s.mesh.attach_new(h);
            s.marked = static_cast<VertexId>(s.mesh.n_vertices() - 1);
            ++s.internal_vertices;
            // The rest of the disc is an unmarked free triangulation.
            s.internal_vertices += fill_free(s.mesh, h, cur_m + 1, rng, budget);
            break;
        }
        // Split: the detached free part sits on either side with equal
        // probability; the marked part continues.
        const auto back = s.mesh.attach_back(h, step.k, rng.coin());
        s.internal_vertices += fill_free(s.mesh, back.hole, step.k - 1, rng, budget);
        h = back.open;
        cur_m -= step.k;
    }

    const auto dist = s.mesh.bfs_distances_multi(s.boundary);
    s.mark_height = dist[static_cast<std::size_t>(s.marked)];
    return s;
}

std::int64_t sample_marked_size(long m, Pcg64& rng, long n_star) {
    long cur_m = m;
    std::int64_t total = 0;
    for (;;) {
        const MarkedStep step = sample_marked_step(cur_m, rng);
        if (step.kind == MarkedStep::NewUnmarked) {
            ++cur_m;
            ++total;
            continue;
        }
        if (step.kind == MarkedStep::NewMarked) {
            ++total;
            total += sample_free_size(cur_m + 1, rng, n_star);
            return total;
        }
        total += sample_free_size(step.k - 1, rng, n_star);
        cur_m -= step.k;
    }
}

std::vector<std::int64_t> height_profile(long m, Pcg64& rng, std::int64_t budget) {
    if (m < 2) throw std::invalid_argument("height_profile: m must be >= 2");
    FreeSample s = sample_free_full(m, rng, budget);
    const auto dist = s.mesh.bfs_distances_multi(s.boundary);
    std::vector<std::int64_t> hist;
    for (VertexId v = static_cast<VertexId>(s.boundary.size()); v < s.mesh.n_vertices(); ++v) {
        const std::int32_t d = dist[static_cast<std::size_t>(v)];
        if (d < 1) throw std::logic_error("height_profile: internal vertex at height < 1");
        if (static_cast<std::size_t>(d) > hist.size()) hist.resize(static_cast<std::size_t>(d), 0);
        ++hist[static_cast<std::size_t>(d - 1)];
    }
    return hist;
}

}  // namespace uipt
