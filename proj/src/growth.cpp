#include "growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "free_fill.hpp"
#include "laws.hpp"
#include "sampling.hpp"

namespace uipt {

namespace {

// Circular doubly linked ring of frontier labels; indices recycled so the
// footprint tracks the frontier, not the step count.
class LabelRing {
  public:
    void init_root() {
        nodes_.clear();
        free_head_ = -1;
        const std::int32_t r = alloc(0), a = alloc(1), b = alloc(1);
        link(r, a);
        link(a, b);
        link(b, r);
        cursor_ = r;
        m_ = 1;
    }

    void init_polygon(long m) {
        nodes_.clear();
        free_head_ = -1;
        std::int32_t first = alloc(0), prev = first;
        for (long i = 1; i < m + 2; ++i) {
            const std::int32_t n = alloc(0);
            link(prev, n);
            prev = n;
        }
        link(prev, first);
        cursor_ = first;
        m_ = m;
    }

    long m() const { return m_; }
    std::int32_t cursor_label() const { return nodes_[static_cast<std::size_t>(cursor_)].label; }
    std::int32_t peel_min_label() const {
        return std::min(nodes_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(cursor_)].prv)].label,
                        nodes_[static_cast<std::size_t>(cursor_)].label);
    }

    void insert_before_cursor(std::int32_t lab) {
        const std::int32_t n = alloc(lab);
        const std::int32_t p = nodes_[static_cast<std::size_t>(cursor_)].prv;
        link(p, n);
        link(n, cursor_);
        ++m_;
    }

    template <class F>
    void remove_arc(long k, bool side_a, F&& on_removed) {
        if (side_a) {
            std::int32_t c = cursor_;
            const std::int32_t before = nodes_[static_cast<std::size_t>(c)].prv;
            for (long i = 0; i < k; ++i) {
                const std::int32_t nx = nodes_[static_cast<std::size_t>(c)].nxt;
                on_removed(nodes_[static_cast<std::size_t>(c)].label);
                release(c);
                c = nx;
            }
            link(before, c);
            cursor_ = c;  // advance to the first survivor
        } else {
            std::int32_t c = nodes_[static_cast<std::size_t>(cursor_)].prv;
            for (long i = 0; i < k; ++i) {
                const std::int32_t pv = nodes_[static_cast<std::size_t>(c)].prv;
                on_removed(nodes_[static_cast<std::size_t>(c)].label);
                release(c);
                c = pv;
            }
            link(c, cursor_);
        }
        m_ -= k;
    }

  private:
    struct Node {
        std::int32_t label;
        std::int32_t nxt, prv;
    };

    std::int32_t alloc(std::int32_t lab) {
        if (free_head_ >= 0) {
            const std::int32_t i = free_head_;
            free_head_ = nodes_[static_cast<std::size_t>(i)].nxt;
            nodes_[static_cast<std::size_t>(i)] = {lab, -1, -1};
            return i;
        }
        nodes_.push_back({lab, -1, -1});
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    void release(std::int32_t i) {
        nodes_[static_cast<std::size_t>(i)].nxt = free_head_;
        free_head_ = i;
    }

    void link(std::int32_t a, std::int32_t b) {
        nodes_[static_cast<std::size_t>(a)].nxt = b;
        nodes_[static_cast<std::size_t>(b)].prv = a;
    }

    std::vector<Node> nodes_;
    std::int32_t free_head_ = -1;
    std::int32_t cursor_ = -1;
    long m_ = 1;
};

struct SkeletonFrontier {
    LabelRing ring;
    long n_star;

    SkeletonFrontier(const GrowthConfig& cfg, Pcg64&) : n_star(cfg.n_star) {
        if (cfg.start_polygon_m >= 0)
            ring.init_polygon(cfg.start_polygon_m);
        else
            ring.init_root();
    }

    long m() const { return ring.m(); }
    std::int32_t new_label() const { return 1 + ring.peel_min_label(); }
    void peel_new(std::int32_t lab) { ring.insert_before_cursor(lab); }

    template <class F>
    std::int64_t peel_back(long k, bool side_a, Pcg64& rng, std::int64_t& budget, F&& on_removed) {
        ring.remove_arc(k, side_a, on_removed);
        const std::int64_t y = sample_free_size(k - 1, rng, n_star);
        budget -= y;
        if (budget < 0) throw BudgetExceeded();
        return y;
    }
};

struct MeshFrontier {
    HalfEdgeMesh mesh;
    HalfEdge cur;  // peel edge; dest(cur) is the cursor vertex
    long m_;

    MeshFrontier(const GrowthConfig& cfg, Pcg64&) {
        if (cfg.start_polygon_m >= 0) {
            cur = mesh.init_polygon(cfg.start_polygon_m);
            m_ = cfg.start_polygon_m;
        } else {
            cur = mesh.init_root();
            m_ = 1;
        }
    }

    long m() const { return m_; }
    std::int32_t new_label() const {
        return 1 + std::min(mesh.label(mesh.origin(cur)), mesh.label(mesh.dest(cur)));
    }
    void peel_new(std::int32_t lab) {
        cur = mesh.attach_new(cur, lab);
        ++m_;
    }

    template <class F>
    std::int64_t peel_back(long k, bool side_a, Pcg64& rng, std::int64_t& budget, F&& on_removed) {
        if (side_a) {
            HalfEdge h = cur;
            for (long i = 0; i < k; ++i) {
                on_removed(mesh.label(mesh.dest(h)));
                h = mesh.next(h);
            }
        } else {
            HalfEdge h = cur;
            for (long i = 0; i < k; ++i) {
                on_removed(mesh.label(mesh.origin(h)));
                h = mesh.prev(h);
            }
        }
        const auto back = mesh.attach_back(cur, k, side_a);
        cur = back.open;
        m_ -= k;
        return fill_free(mesh, back.hole, k - 1, rng, budget);
    }
};

template <class Frontier>
GrowthResult grow_driver(const GrowthConfig& cfg, RandomSource src) {
    if (cfg.r_max < 1) throw std::invalid_argument("grow_uipt: r_max must be >= 1");
    Pcg64 rng(src);
    Frontier f(cfg, rng);
    GrowthResult res;

    std::vector<std::int64_t> label_count(static_cast<std::size_t>(cfg.r_max) + 3, 0);
    const auto bump = [&](std::int32_t lab, std::int64_t d) {
        if (static_cast<std::size_t>(lab) >= label_count.size()) label_count.resize(static_cast<std::size_t>(lab) + 1, 0);
        label_count[static_cast<std::size_t>(lab)] += d;
    };
    long next_r = 1;
    if (cfg.start_polygon_m >= 0)
        bump(0, cfg.start_polygon_m + 2);
    else {
        bump(0, 1);
        bump(1, 2);
    }
    std::int64_t cnt_below = label_count[0];

    std::uint64_t hull = static_cast<std::uint64_t>(f.m()) + 2;
    double vt2 = 0, vt3 = 0;
    std::int64_t budget = cfg.budget;
    std::uint64_t t = 0;

    try {
        while (next_r <= cfg.r_max) {
            if (cfg.max_steps > 0 && t >= cfg.max_steps) break;
            --budget;
            if (budget < 0) throw BudgetExceeded();
            ++t;
            const long m = f.m();
            const long x = sample_step(m, rng);
            std::int64_t y;
            if (x == 1) {
                const std::int32_t lab = f.new_label();
                f.peel_new(lab);
                bump(lab, 1);
                if (lab < next_r) ++cnt_below;
                y = 1;
            } else {
                const long k = -x;
                const bool side_a = rng.coin();
                y = f.peel_back(k, side_a, rng, budget, [&](std::int32_t lab) {
                    bump(lab, -1);
                    if (lab < next_r) --cnt_below;
                });
            }
            hull += static_cast<std::uint64_t>(y);
            const double ax = std::abs(static_cast<double>(x));
            vt2 += ax * ax;
            vt3 += ax * ax * ax;
            if (cfg.record_steps) res.steps.push_back({t, f.m(), x, y, next_r});
            while (cnt_below == 0 && next_r <= cfg.r_max) {
                res.layers.push_back({next_r, t, f.m(), hull, 0, vt2, vt3});
                ++next_r;
                cnt_below = 0;
                for (long l = 0; l < next_r && l < static_cast<long>(label_count.size()); ++l)
                    cnt_below += label_count[static_cast<std::size_t>(l)];
            }
        }
        res.completed = next_r > cfg.r_max;
    } catch (const BudgetExceeded&) {
        res.budget_exceeded = true;
    }

    res.total_steps = t;
    res.hull_volume = hull;
    if constexpr (std::is_same_v<Frontier, MeshFrontier>) {
        res.outer = f.cur;
        HalfEdge c = f.cur;
        do {
            res.frontier_vertices.push_back(f.mesh.origin(c));
            c = f.mesh.next(c);
        } while (c != f.cur);
        if (!res.budget_exceeded) {
            // Exact ball volumes from a final BFS (creation labels are only
            // used for the stopping rule).
            const auto dist = f.mesh.bfs_distances(0);
            std::vector<std::uint64_t> by_r(static_cast<std::size_t>(cfg.r_max) + 1, 0);
            for (std::int32_t d : dist)
                if (d >= 0 && d <= cfg.r_max) ++by_r[static_cast<std::size_t>(d)];
            std::uint64_t acc = 0;
            std::size_t li = 0;
            for (long r = 0; r <= cfg.r_max; ++r) {
                acc += by_r[static_cast<std::size_t>(r)];
                while (li < res.layers.size() && res.layers[li].r == r) {
                    res.layers[li].ball = acc;
                    ++li;
                }
            }
        }
        res.mesh = std::move(f.mesh);
    }
    return res;
}

}  // namespace

GrowthResult grow_uipt(const GrowthConfig& cfg, RandomSource src) {
    return cfg.full ? grow_driver<MeshFrontier>(cfg, src) : grow_driver<SkeletonFrontier>(cfg, src);
}

}  // namespace uipt
