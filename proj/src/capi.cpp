#include "uipt.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "chain.hpp"
#include "free_fill.hpp"
#include "growth.hpp"
#include "laws.hpp"
#include "mesh.hpp"
#include "parallel.hpp"
#include "percolation.hpp"
#include "rational.hpp"
#include "sampling.hpp"
#include "stats.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return UIPT_OK;
    } catch (const uipt::BudgetExceeded& e) {
        g_last_error = e.what();
        return UIPT_EBUDGET;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return UIPT_EINVAL;
    } catch (const std::length_error& e) {
        g_last_error = e.what();
        return UIPT_EINVAL;
    } catch (const std::ios_base::failure& e) {
        g_last_error = e.what();
        return UIPT_EIO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        // File helpers throw runtime_error with a path in the message.
        return std::string(e.what()).find("cannot open") != std::string::npos ? UIPT_EIO : UIPT_EINTERNAL;
    }
}

void out_rational(const uipt::Rational& q, char** num, char** den) {
    if (num) *num = dup_string(q.get_num().get_str());
    if (den) *den = dup_string(q.get_den().get_str());
}

struct LawRow {
    long index;
    uipt::Rational value;
};

}  // namespace

struct uipt_law {
    std::vector<LawRow> rows;
};

struct uipt_chain_result {
    uipt::ChainResult res;
};

struct uipt_growth {
    uipt::GrowthResult res;
};

extern "C" {

const char* uipt_strerror(int status) {
    switch (status) {
        case UIPT_OK: return "ok";
        case UIPT_EINVAL: return "invalid argument";
        case UIPT_EBUDGET: return "step budget exceeded";
        case UIPT_EIO: return "i/o error";
        default: return "internal error";
    }
}

const char* uipt_last_error(void) { return g_last_error.c_str(); }

void uipt_string_free(char* s) { std::free(s); }

int uipt_phi(long n, long m, char** num, char** den) {
    return guarded([&] { out_rational(uipt::phi(n, m), num, den); });
}

int uipt_partition_z(long m, char** num, char** den) {
    return guarded([&] { out_rational(uipt::Z(m), num, den); });
}

int uipt_partition_z_theta(long m, long theta_num, long theta_den, char** num, char** den) {
    return guarded([&] {
        if (theta_den == 0) throw std::invalid_argument("theta denominator is zero");
        uipt::Rational theta(theta_num, theta_den);
        theta.canonicalize();
        out_rational(uipt::Z_of_theta(m, theta), num, den);
    });
}

int uipt_partition_ztilde(long m, char** num, char** den) {
    return guarded([&] { out_rational(uipt::Ztilde(m), num, den); });
}

int uipt_expected_step(long m, char** num, char** den) {
    return guarded([&] { out_rational(uipt::expected_step(m), num, den); });
}

int uipt_hitting_prob(long n, long m, char** num, char** den) {
    return guarded([&] { out_rational(uipt::hitting_prob(n, m), num, den); });
}

int uipt_expected_visits(long n, char** num, char** den) {
    return guarded([&] { out_rational(uipt::expected_visits(n), num, den); });
}

int uipt_free_size_mean(long m, char** num, char** den) {
    return guarded([&] { out_rational(uipt::free_size_mean(m), num, den); });
}

int uipt_stable_half_tail(double t, double* out) {
    return guarded([&] { *out = uipt::stable_half_tail(t); });
}

int uipt_step_law_new(long m, uipt_law** out) {
    return guarded([&] {
        const auto law = uipt::step_law(m);
        auto* l = new uipt_law;
        l->rows.push_back({1, law.p_up});
        for (long k = 1; k <= m; ++k) l->rows.push_back({-k, law.p_down[static_cast<std::size_t>(k - 1)]});
        *out = l;
    });
}

int uipt_marked_step_law_new(long m, uipt_law** out) {
    return guarded([&] {
        const auto law = uipt::marked_step_law(m);
        auto* l = new uipt_law;
        l->rows.push_back({0, law.p_new_unmarked});
        l->rows.push_back({1, law.p_new_marked});
        for (long k = 1; k <= m; ++k) l->rows.push_back({-k, law.p_split[static_cast<std::size_t>(k - 1)]});
        *out = l;
    });
}

int uipt_free_peel_law_new(long m, uipt_law** out) {
    return guarded([&] {
        const auto law = uipt::free_peel_law(m);
        auto* l = new uipt_law;
        l->rows.push_back({0, law.p_new});
        for (long i = 1; i <= m; ++i) l->rows.push_back({i, law.p_split[static_cast<std::size_t>(i - 1)]});
        if (m == 0) l->rows.push_back({-1, law.p_glue});
        *out = l;
    });
}

int uipt_free_size_law_new(long m, long n_max, uipt_law** out) {
    return guarded([&] {
        const auto law = uipt::free_size_law(m, n_max);
        auto* l = new uipt_law;
        for (long n = 0; n <= n_max; ++n) l->rows.push_back({n, law.probs[static_cast<std::size_t>(n)]});
        l->rows.push_back({-1, law.tail_mass});
        *out = l;
    });
}

long uipt_law_rows(const uipt_law* law) { return law ? static_cast<long>(law->rows.size()) : 0; }

int uipt_law_row(const uipt_law* law, long row, long* index, char** num, char** den, double* decimal) {
    return guarded([&] {
        if (!law || row < 0 || row >= static_cast<long>(law->rows.size()))
            throw std::invalid_argument("law row out of range");
        const auto& r = law->rows[static_cast<std::size_t>(row)];
        if (index) *index = r.index;
        out_rational(r.value, num, den);
        if (decimal) *decimal = uipt::to_double(r.value);
    });
}

void uipt_law_free(uipt_law* law) { delete law; }

int uipt_sample_steps(long m, long count, uint64_t seed, uint64_t stream, long* out) {
    return guarded([&] {
        if (count < 0 || !out) throw std::invalid_argument("bad sample buffer");
        uipt::Pcg64 rng({seed, stream});
        for (long i = 0; i < count; ++i) out[i] = uipt::sample_step(m, rng);
    });
}

int uipt_sample_free_sizes(long m, long count, uint64_t seed, uint64_t stream, long n_star, int64_t* out) {
    return guarded([&] {
        if (count < 0 || !out) throw std::invalid_argument("bad sample buffer");
        uipt::Pcg64 rng({seed, stream});
        for (long i = 0; i < count; ++i) out[i] = uipt::sample_free_size(m, rng, n_star);
    });
}

int uipt_sample_marked_sizes(long m, long count, uint64_t seed, uint64_t stream, long n_star, int64_t* out) {
    return guarded([&] {
        if (count < 0 || !out) throw std::invalid_argument("bad sample buffer");
        uipt::Pcg64 rng({seed, stream});
        for (long i = 0; i < count; ++i) out[i] = uipt::sample_marked_size(m, rng, n_star);
    });
}

int uipt_chain_run(long m0, uint64_t horizon, const long* targets, long n_targets, const uint64_t* checkpoints,
                   long n_checkpoints, int track_vt, uint64_t seed, uint64_t stream, uipt_chain_result** out) {
    return guarded([&] {
        uipt::ChainConfig cfg;
        cfg.m0 = m0;
        cfg.horizon = horizon;
        cfg.targets.assign(targets, targets + n_targets);
        cfg.checkpoints.assign(checkpoints, checkpoints + n_checkpoints);
        cfg.track_vt = track_vt != 0;
        auto* r = new uipt_chain_result{uipt::run_chain(cfg, {seed, stream})};
        *out = r;
    });
}

int uipt_chain_checkpoint_m(const uipt_chain_result* r, long i, long* m) {
    return guarded([&] {
        if (!r || i < 0 || i >= static_cast<long>(r->res.checkpoint_m.size()))
            throw std::invalid_argument("checkpoint out of range");
        *m = r->res.checkpoint_m[static_cast<std::size_t>(i)];
    });
}

int uipt_chain_vt(const uipt_chain_result* r, long i, double* vt2, double* vt3) {
    return guarded([&] {
        if (!r || i < 0 || i >= static_cast<long>(r->res.vt2.size()))
            throw std::invalid_argument("vt checkpoint out of range");
        *vt2 = r->res.vt2[static_cast<std::size_t>(i)];
        *vt3 = r->res.vt3[static_cast<std::size_t>(i)];
    });
}

int uipt_chain_hit(const uipt_chain_result* r, long i, int* hit) {
    return guarded([&] {
        if (!r || i < 0 || i >= static_cast<long>(r->res.hit.size()))
            throw std::invalid_argument("target out of range");
        *hit = r->res.hit[static_cast<std::size_t>(i)];
    });
}

int uipt_chain_summary(const uipt_chain_result* r, uint64_t* absorbed_at, uint64_t* steps_run, long* final_m,
                       long* max_m) {
    return guarded([&] {
        if (!r) throw std::invalid_argument("null result");
        if (absorbed_at) *absorbed_at = r->res.absorbed_at;
        if (steps_run) *steps_run = r->res.steps_run;
        if (final_m) *final_m = r->res.final_m;
        if (max_m) *max_m = r->res.max_m;
    });
}

void uipt_chain_free(uipt_chain_result* r) { delete r; }

int uipt_growth_exponent_probe(uint64_t horizon, long replicas, uint64_t seed, uint64_t stream, int threads,
                               double* slope, double* spread, long* degenerate) {
    return guarded([&] {
        const auto probe = uipt::growth_exponent_probe(horizon, replicas, {seed, stream}, threads);
        if (slope) *slope = probe.slope;
        if (spread) *spread = probe.spread;
        if (degenerate) *degenerate = probe.degenerate;
    });
}

int uipt_heavy_tail_probe(uint64_t horizon, long replicas, uint64_t seed, uint64_t stream, int threads,
                          double* slope_vt2, double* spread_vt2, double* slope_vt3, double* spread_vt3) {
    return guarded([&] {
        const auto probe = uipt::heavy_tail_probe(horizon, replicas, {seed, stream}, threads);
        if (slope_vt2) *slope_vt2 = probe.vt2.slope;
        if (spread_vt2) *spread_vt2 = probe.vt2.spread;
        if (slope_vt3) *slope_vt3 = probe.vt3.slope;
        if (spread_vt3) *spread_vt3 = probe.vt3.spread;
    });
}

int uipt_grow(long r_max, int mode, uint64_t seed, uint64_t stream, int64_t budget, long n_star,
              uipt_growth** out) {
    return guarded([&] {
        uipt::GrowthConfig cfg;
        cfg.r_max = r_max;
        cfg.full = mode == UIPT_MODE_FULL;
        if (budget > 0) cfg.budget = budget;
        if (n_star > 0) cfg.n_star = n_star;
        auto* g = new uipt_growth{uipt::grow_uipt(cfg, {seed, stream})};
        *out = g;
    });
}

long uipt_growth_layers(const uipt_growth* g) { return g ? static_cast<long>(g->res.layers.size()) : 0; }

int uipt_growth_layer(const uipt_growth* g, long i, long* r, uint64_t* t_r, long* m, uint64_t* hull,
                      uint64_t* ball, double* vt2, double* vt3) {
    return guarded([&] {
        if (!g || i < 0 || i >= static_cast<long>(g->res.layers.size()))
            throw std::invalid_argument("layer out of range");
        const auto& l = g->res.layers[static_cast<std::size_t>(i)];
        if (r) *r = l.r;
        if (t_r) *t_r = l.t;
        if (m) *m = l.m;
        if (hull) *hull = l.hull;
        if (ball) *ball = l.ball;
        if (vt2) *vt2 = l.vt2;
        if (vt3) *vt3 = l.vt3;
    });
}

int uipt_growth_summary(const uipt_growth* g, uint64_t* total_steps, uint64_t* hull_volume, int* completed,
                        int* budget_exceeded) {
    return guarded([&] {
        if (!g) throw std::invalid_argument("null growth");
        if (total_steps) *total_steps = g->res.total_steps;
        if (hull_volume) *hull_volume = g->res.hull_volume;
        if (completed) *completed = g->res.completed ? 1 : 0;
        if (budget_exceeded) *budget_exceeded = g->res.budget_exceeded ? 1 : 0;
    });
}

int uipt_growth_validate(const uipt_growth* g) {
    return guarded([&] {
        if (!g || !g->res.mesh) throw std::invalid_argument("no mesh (skeleton mode?)");
        const std::string err = g->res.mesh->validate({g->res.outer});
        if (!err.empty()) throw std::logic_error(err);
    });
}

int uipt_growth_export_mesh(const uipt_growth* g, const char* edge_path, const char* vertex_csv_path) {
    return guarded([&] {
        if (!g || !g->res.mesh) throw std::invalid_argument("no mesh (skeleton mode?)");
        if (edge_path) g->res.mesh->export_edge_list(edge_path);
        if (vertex_csv_path) g->res.mesh->export_vertex_csv(vertex_csv_path, 0);
    });
}

void uipt_growth_free(uipt_growth* g) { delete g; }

int uipt_perc_run(int engine, double p, uint64_t horizon, uint64_t seed, uint64_t stream, int* died,
                  uint64_t* death_step, uint64_t* max_b) {
    return guarded([&] {
        uipt::PercConfig cfg;
        cfg.p = p;
        cfg.horizon = horizon;
        cfg.full = engine == UIPT_ENGINE_FULL;
        const auto o = uipt::run_percolation(cfg, {seed, stream});
        if (o.budget_exceeded) throw uipt::BudgetExceeded();
        if (died) *died = o.died ? 1 : 0;
        if (death_step) *death_step = o.death_step;
        if (max_b) *max_b = o.max_b;
    });
}

int uipt_perc_survival(int engine, double p, uint64_t horizon, uint64_t replicas, uint64_t seed, uint64_t stream,
                       int threads, double* fraction, double* ci_lo, double* ci_hi) {
    return guarded([&] {
        uipt::PercConfig cfg;
        cfg.p = p;
        cfg.horizon = horizon;
        cfg.full = engine == UIPT_ENGINE_FULL;
        const auto est = uipt::estimate_survival(cfg, replicas, {seed, stream}, threads);
        if (fraction) *fraction = est.fraction;
        if (ci_lo) *ci_lo = est.ci_lo;
        if (ci_hi) *ci_hi = est.ci_hi;
    });
}

int uipt_fit_loglog(const double* x, const double* y, long n, double* slope, double* intercept,
                    double* stderr_slope) {
    return guarded([&] {
        if (!x || !y || n < 2) throw std::invalid_argument("fit needs >= 2 points");
        const auto f = uipt::fit_loglog(std::vector<double>(x, x + n), std::vector<double>(y, y + n));
        if (slope) *slope = f.slope;
        if (intercept) *intercept = f.intercept;
        if (stderr_slope) *stderr_slope = f.stderr_slope;
    });
}

int uipt_chi_square_pvalue(double stat, long dof, double* p) {
    return guarded([&] { *p = uipt::chi_square_pvalue(stat, dof); });
}

int uipt_ks_pvalue(double d, double n_effective, double* p) {
    return guarded([&] { *p = uipt::ks_pvalue(d, n_effective); });
}

int uipt_gof_step_law(long m, uint64_t draws, long tail_from, double significance, uint64_t seed, uint64_t stream,
                      double* stat, long* dof, double* p_value, int* pass) {
    return guarded([&] {
        if (draws == 0 || tail_from < 2) throw std::invalid_argument("gof_step_law: bad arguments");
        const long tail = std::min(tail_from, m);
        // Cells: +1, -1, ..., -(tail-1), then everything at or past -tail.
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(tail) + 1, 0);
        uipt::Pcg64 rng({seed, stream});
        for (std::uint64_t i = 0; i < draws; ++i) {
            const long x = uipt::sample_step(m, rng);
            if (x == 1)
                ++counts[0];
            else
                ++counts[static_cast<std::size_t>(std::min(-x, tail))];
        }
        const auto law = uipt::step_law(m);
        std::vector<double> probs(counts.size(), 0.0);
        probs[0] = uipt::to_double(law.p_up);
        for (long k = 1; k < tail; ++k) probs[static_cast<std::size_t>(k)] = uipt::to_double(law.p_down[static_cast<std::size_t>(k - 1)]);
        double tail_p = 0;
        for (long k = tail; k <= m; ++k) tail_p += uipt::to_double(law.p_down[static_cast<std::size_t>(k - 1)]);
        probs[static_cast<std::size_t>(tail)] = tail_p;
        const auto rep = uipt::chi_square_gof(counts, probs, significance);
        if (stat) *stat = rep.statistic;
        if (dof) *dof = rep.dof;
        if (p_value) *p_value = rep.p_value;
        if (pass) *pass = rep.pass ? 1 : 0;
    });
}

int uipt_gof_free_size(long m, uint64_t draws, long n_cells, double significance, uint64_t seed, uint64_t stream,
                       double* stat, long* dof, double* p_value, int* pass) {
    return guarded([&] {
        if (draws == 0 || n_cells < 2) throw std::invalid_argument("gof_free_size: bad arguments");
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(n_cells) + 1, 0);
        uipt::Pcg64 rng({seed, stream});
        std::int64_t budget = 1'000'000'000;
        for (std::uint64_t i = 0; i < draws; ++i) {
            const auto sample = uipt::sample_free_full(m, rng, budget);
            const std::int64_t n = sample.internal_vertices;
            ++counts[static_cast<std::size_t>(std::min<std::int64_t>(n, n_cells))];
        }
        const auto law = uipt::free_size_law(m, n_cells - 1);
        std::vector<double> probs(counts.size(), 0.0);
        for (long n = 0; n < n_cells; ++n) probs[static_cast<std::size_t>(n)] = uipt::to_double(law.probs[static_cast<std::size_t>(n)]);
        probs[static_cast<std::size_t>(n_cells)] = uipt::to_double(law.tail_mass);
        const auto rep = uipt::chi_square_gof(counts, probs, significance);
        if (stat) *stat = rep.statistic;
        if (dof) *dof = rep.dof;
        if (p_value) *p_value = rep.p_value;
        if (pass) *pass = rep.pass ? 1 : 0;
    });
}

int uipt_gof_stable_limit(long m, uint64_t replicas, uint64_t seed, uint64_t stream, int threads,
                          double* ks_distance) {
    return guarded([&] {
        if (m < 1 || replicas == 0) throw std::invalid_argument("gof_stable_limit: bad arguments");
        std::vector<double> scaled(replicas, 0.0);
        uipt::parallel_for(static_cast<long>(replicas), threads, [&](long r) {
            uipt::Pcg64 rng({seed, stream + static_cast<std::uint64_t>(r)});
            scaled[static_cast<std::size_t>(r)] =
                static_cast<double>(uipt::sample_marked_size(m, rng)) / (static_cast<double>(m) * static_cast<double>(m));
        });
        const double d = uipt::ks_statistic(std::move(scaled), [](double t) {
            return t <= 0 ? 0.0 : 1.0 - uipt::stable_half_tail(t);
        });
        if (ks_distance) *ks_distance = d;
    });
}

}  // extern "C"
