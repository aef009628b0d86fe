#include "percolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "free_fill.hpp"
#include "parallel.hpp"
#include "sampling.hpp"
#include "stats.hpp"

namespace uipt {

namespace {

PercOutcome run_reduced(const PercConfig& cfg, Pcg64& rng) {
    PercOutcome out;
    std::int64_t b = 1, w = 0;  // black root
    if (rng.bernoulli(cfg.p)) ++b; else ++w;
    if (rng.bernoulli(cfg.p)) ++b; else ++w;
    long m = 1;
    out.max_b = static_cast<std::uint64_t>(b);
    for (std::uint64_t t = 1; t <= cfg.horizon; ++t) {
        const long x = sample_step(m, rng);
        if (x == 1) {
            if (rng.bernoulli(cfg.p)) ++b; else ++w;
        } else {
            if (rng.coin()) b += x; else w += x;
            std::tie(b, w) = clamp_counts(b, w);
        }
        m += x;
        out.max_b = std::max(out.max_b, static_cast<std::uint64_t>(b));
        out.steps_run = t;
        if (b == 0) {
            out.died = true;
            out.death_step = t;
            return out;
        }
    }
    return out;
}

// Full engine: the mesh plus frontier colors. Peels at a tracked
// bichromatic edge while one exists; the contiguity of the color arcs makes
// the (B, W) bookkeeping of the reduced chain exact.
class FullEngine {
  public:
    FullEngine(const PercConfig& cfg, Pcg64& rng) : cfg_(cfg), rng_(rng), budget_(cfg.budget) {
        cur_ = mesh_.init_root();
        mesh_.set_color(0, 1);
        b_ = 1;
        w_ = 0;
        for (VertexId v = 1; v <= 2; ++v) {
            const std::int8_t c = rng_.bernoulli(cfg_.p) ? 1 : 0;
            mesh_.set_color(v, c);
            c ? ++b_ : ++w_;
        }
        m_ = 1;
        bichrom_ = find_bichrom();
    }

    PercOutcome run() {
        PercOutcome out;
        out.max_b = static_cast<std::uint64_t>(b_);
        try {
            for (std::uint64_t t = 1; t <= cfg_.horizon; ++t) {
                step();
                out.max_b = std::max(out.max_b, static_cast<std::uint64_t>(b_));
                out.steps_run = t;
                if (cfg_.check_arcs_every != 0 && t % cfg_.check_arcs_every == 0) assert_arcs();
                if (b_ == 0) {
                    out.died = true;
                    out.death_step = t;
                    break;
                }
            }
        } catch (const BudgetExceeded&) {
            out.budget_exceeded = true;
        }
        return out;
    }

    const HalfEdgeMesh& mesh() const { return mesh_; }
    HalfEdge frontier_handle() const { return cur_; }
    std::int64_t black() const { return b_; }
    std::int64_t white() const { return w_; }
    long m() const { return m_; }

    // Both colors present implies one contiguous arc of each.
    void assert_arcs() const {
        long switches = 0;
        HalfEdge c = cur_;
        do {
            if (mesh_.color(mesh_.origin(c)) != mesh_.color(mesh_.dest(c))) ++switches;
            c = mesh_.next(c);
        } while (c != cur_);
        if (switches != 0 && switches != 2) throw std::logic_error("percolation: color arcs not contiguous");
    }

  private:
    HalfEdge find_bichrom() const {
        HalfEdge c = cur_;
        do {
            if (mesh_.color(mesh_.origin(c)) != mesh_.color(mesh_.dest(c))) return c;
            c = mesh_.next(c);
        } while (c != cur_);
        return kNoEdge;
    }

    void step() {
        const HalfEdge h = bichrom_ != kNoEdge ? bichrom_ : cur_;
        const long x = sample_step(m_, rng_);
        --budget_;
        if (budget_ < 0) throw BudgetExceeded();
        if (x == 1) {
            const std::int8_t c = rng_.bernoulli(cfg_.p) ? 1 : 0;
            const HalfEdge open = mesh_.attach_new(h, -1, c);
            c ? ++b_ : ++w_;
            ++m_;
            // open = (w -> v); prev(open) = (u -> w).
            cur_ = open;
            const std::int8_t cu = mesh_.color(mesh_.origin(mesh_.prev(open)));
            const std::int8_t cv = mesh_.color(mesh_.dest(open));
            if (c != cv)
                bichrom_ = open;
            else if (c != cu)
                bichrom_ = mesh_.prev(open);
            else
                bichrom_ = kNoEdge;  // peel edge was monochromatic, still is
            return;
        }
        const long k = -x;
        // Heads removes on the black side. At a bichromatic peel edge the
        // arc starting from the black endpoint runs through the black arc,
        // so the coin matches the reduced chain's color choice; on a
        // monochromatic frontier both sides are that color.
        const bool remove_black = rng_.coin();
        bool side_a;  // arc starting at dest(h)
        const std::int8_t cv = mesh_.color(mesh_.dest(h));
        if (remove_black)
            side_a = (cv == 1);
        else
            side_a = (cv == 0);
        const auto back = mesh_.attach_back(h, k, side_a);
        if (remove_black) b_ -= k; else w_ -= k;
        std::tie(b_, w_) = clamp_counts(b_, w_);
        m_ -= k;
        if (!cfg_.color_fills) {
            fill_free(mesh_, back.hole, k - 1, rng_, budget_);
        } else {
            const std::int64_t added = fill_free(mesh_, back.hole, k - 1, rng_, budget_);
            for (VertexId v = static_cast<VertexId>(mesh_.n_vertices() - added); v < mesh_.n_vertices(); ++v)
                mesh_.set_color(v, rng_.bernoulli(cfg_.p) ? 1 : 0);
        }
        cur_ = back.open;
        const std::int8_t ca = mesh_.color(mesh_.origin(back.open));
        const std::int8_t cb = mesh_.color(mesh_.dest(back.open));
        bichrom_ = (ca != cb) ? back.open : kNoEdge;
    }

    const PercConfig& cfg_;
    Pcg64& rng_;
    HalfEdgeMesh mesh_;
    HalfEdge cur_ = kNoEdge;
    HalfEdge bichrom_ = kNoEdge;
    std::int64_t b_ = 0, w_ = 0;
    long m_ = 0;
    std::int64_t budget_;
};

}  // namespace

PercOutcome run_percolation(const PercConfig& cfg, RandomSource src) {
    if (cfg.p < 0 || cfg.p > 1) throw std::invalid_argument("run_percolation: p outside [0, 1]");
    Pcg64 rng(src);
    if (!cfg.full) return run_reduced(cfg, rng);
    FullEngine eng(cfg, rng);
    return eng.run();
}

SurvivalEstimate estimate_survival(const PercConfig& cfg, std::uint64_t replicas, RandomSource src, int threads) {
    if (replicas < 1) throw std::invalid_argument("estimate_survival: need replicas >= 1");
    std::vector<std::uint8_t> survived(replicas, 0), exceeded(replicas, 0);
    parallel_for(static_cast<long>(replicas), threads, [&](long r) {
        const PercOutcome o = run_percolation(cfg, src.with_stream(src.stream + static_cast<std::uint64_t>(r)));
        survived[static_cast<std::size_t>(r)] = o.died ? 0 : 1;
        exceeded[static_cast<std::size_t>(r)] = o.budget_exceeded ? 1 : 0;
    });
    SurvivalEstimate est;
    est.p = cfg.p;
    est.replicas = replicas;
    for (std::uint64_t r = 0; r < replicas; ++r) {
        est.survived += survived[static_cast<std::size_t>(r)];
        est.budget_exceeded += exceeded[static_cast<std::size_t>(r)];
    }
    const auto ci = wilson_interval(est.survived, replicas);
    est.fraction = ci.fraction;
    est.ci_lo = ci.lo;
    est.ci_hi = ci.hi;
    return est;
}

std::vector<SurvivalEstimate> sweep(const std::vector<double>& p_list, std::uint64_t horizon,
                                    std::uint64_t replicas, bool full, RandomSource src, int threads) {
    std::vector<SurvivalEstimate> table;
    std::uint64_t stream = src.stream;
    for (double p : p_list) {
        PercConfig cfg;
        cfg.p = p;
        cfg.horizon = horizon;
        cfg.full = full;
        table.push_back(estimate_survival(cfg, replicas, {src.seed, stream}, threads));
        stream += replicas;
    }
    return table;
}

std::optional<double> crossing_estimate(const std::vector<SurvivalEstimate>& table, double level) {
    for (std::size_t i = 1; i < table.size(); ++i) {
        const double f0 = table[i - 1].fraction, f1 = table[i].fraction;
        if (f0 < level && f1 >= level) {
            const double t = (level - f0) / (f1 - f0);
            return table[i - 1].p + t * (table[i].p - table[i - 1].p);
        }
    }
    return std::nullopt;
}

LogBoundProbe subcritical_logbound_probe(double p, std::uint64_t horizon, std::uint64_t replicas,
                                         RandomSource src, int threads) {
    if (p >= 0.5) throw std::invalid_argument("subcritical_logbound_probe: p must be < 1/2");
    std::vector<double> maxb(replicas, 0);
    PercConfig cfg;
    cfg.p = p;
    cfg.horizon = horizon;
    parallel_for(static_cast<long>(replicas), threads, [&](long r) {
        const PercOutcome o = run_percolation(cfg, src.with_stream(src.stream + static_cast<std::uint64_t>(r)));
        maxb[static_cast<std::size_t>(r)] = static_cast<double>(o.max_b);
    });
    std::sort(maxb.begin(), maxb.end());
    LogBoundProbe probe;
    probe.horizon = horizon;
    probe.median_max_b = maxb[maxb.size() / 2];
    probe.ratio_to_log = probe.median_max_b / std::log(static_cast<double>(horizon));
    return probe;
}

}  // namespace uipt
