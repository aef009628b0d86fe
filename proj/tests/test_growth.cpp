#include <cmath>

#include "doctest.h"
#include "growth.hpp"
#include "laws.hpp"
#include "stats.hpp"

using namespace uipt;

TEST_CASE("growth r_max = 1: well-formed trace, T_1 >= 1") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        GrowthConfig cfg;
        cfg.r_max = 1;
        cfg.full = (s % 2 == 0);
        const auto res = grow_uipt(cfg, {200, s});
        REQUIRE(res.completed);
        REQUIRE(res.layers.size() == 1);
        CHECK(res.layers[0].r == 1);
        CHECK(res.layers[0].t >= 1);
        CHECK(res.layers[0].t == res.total_steps);
        CHECK(res.layers[0].hull >= 2);
    }
}

TEST_CASE("layer correctness: frontier BFS distance equals r at T_r") {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const long r_max = 1 + static_cast<long>(s % 8);
        GrowthConfig cfg;
        cfg.r_max = r_max;
        cfg.full = true;
        const auto res = grow_uipt(cfg, {201, s});
        REQUIRE(res.completed);
        REQUIRE(res.mesh.has_value());
        const auto dist = res.mesh->bfs_distances(0);
        for (VertexId v : res.frontier_vertices) {
            CHECK(dist[static_cast<std::size_t>(v)] == r_max);
            CHECK(res.mesh->label(v) == r_max);
        }
    }
}

TEST_CASE("volume additivity and hull/ball ordering") {
    GrowthConfig cfg;
    cfg.r_max = 8;
    cfg.full = true;
    cfg.record_steps = true;
    const auto res = grow_uipt(cfg, {202, 3});
    REQUIRE(res.completed);
    REQUIRE(res.mesh.has_value());

    // Hull volume = 3 root vertices + sum of Y_t, and equals the vertex count.
    std::int64_t y_sum = 0;
    for (const auto& st : res.steps) {
        y_sum += st.y;
        if (st.x == 1) CHECK(st.y == 1);
        if (st.x < 0) CHECK(st.y >= 0);
    }
    CHECK(res.hull_volume == 3 + static_cast<std::uint64_t>(y_sum));
    CHECK(res.hull_volume == static_cast<std::uint64_t>(res.mesh->n_vertices()));

    // Per-layer hull totals match the step records; T_r strictly increases.
    std::uint64_t prev_t = 0;
    for (const auto& layer : res.layers) {
        CHECK(layer.t > prev_t);
        prev_t = layer.t;
        std::int64_t acc = 3;
        for (const auto& st : res.steps)
            if (st.t <= layer.t) acc += st.y;
        CHECK(layer.hull == static_cast<std::uint64_t>(acc));
        CHECK(layer.ball <= layer.hull);
        CHECK(layer.ball >= 1);
    }
    CHECK(res.mesh->validate({res.outer}).empty());
}

TEST_CASE("frontier bookkeeping: engine m equals cycle length - 2 on every layer") {
    GrowthConfig cfg;
    cfg.r_max = 10;
    cfg.full = true;
    const auto res = grow_uipt(cfg, {203, 9});
    REQUIRE(res.completed);
    CHECK(res.layers.back().m + 2 == static_cast<long>(res.frontier_vertices.size()));
    CHECK(res.layers.back().m + 2 == res.mesh->cycle_length(res.outer));
}

TEST_CASE("growth is deterministic per seed") {
    GrowthConfig cfg;
    cfg.r_max = 6;
    for (bool full : {false, true}) {
        cfg.full = full;
        const auto a = grow_uipt(cfg, {204, 1});
        const auto b = grow_uipt(cfg, {204, 1});
        REQUIRE(a.layers.size() == b.layers.size());
        for (std::size_t i = 0; i < a.layers.size(); ++i) {
            CHECK(a.layers[i].t == b.layers[i].t);
            CHECK(a.layers[i].m == b.layers[i].m);
            CHECK(a.layers[i].hull == b.layers[i].hull);
        }
    }
}

TEST_CASE("full and skeleton modes agree in law at small radius") {
    const long reps = 400, r = 6;
    std::vector<double> t_full, t_skel, h_full, h_skel, m_full, m_skel;
    for (long i = 0; i < reps; ++i) {
        GrowthConfig cfg;
        cfg.r_max = r;
        cfg.full = true;
        const auto a = grow_uipt(cfg, {205, static_cast<std::uint64_t>(i)});
        cfg.full = false;
        const auto b = grow_uipt(cfg, {206, static_cast<std::uint64_t>(i)});
        REQUIRE(a.completed);
        REQUIRE(b.completed);
        t_full.push_back(static_cast<double>(a.layers.back().t));
        t_skel.push_back(static_cast<double>(b.layers.back().t));
        h_full.push_back(static_cast<double>(a.layers.back().hull));
        h_skel.push_back(static_cast<double>(b.layers.back().hull));
        m_full.push_back(static_cast<double>(a.layers.back().m));
        m_skel.push_back(static_cast<double>(b.layers.back().m));
    }
    const double n_eff = reps / 2.0;
    CHECK(ks_pvalue(ks_two_sample_statistic(t_full, t_skel), n_eff) >= 0.001);
    CHECK(ks_pvalue(ks_two_sample_statistic(h_full, h_skel), n_eff) >= 0.001);
    CHECK(ks_pvalue(ks_two_sample_statistic(m_full, m_skel), n_eff) >= 0.001);
}

TEST_CASE("structural soundness after many random peels") {
    GrowthConfig cfg;
    cfg.r_max = 1000000;  // never reached
    cfg.max_steps = 10000;
    cfg.full = true;
    const auto res = grow_uipt(cfg, {207, 0});
    CHECK_FALSE(res.completed);
    CHECK(res.total_steps == 10000);
    REQUIRE(res.mesh.has_value());
    CHECK(res.mesh->validate({res.outer}).empty());
}

TEST_CASE("polygon start: peeling a 12-gon stays valid") {
    GrowthConfig cfg;
    cfg.r_max = 3;
    cfg.full = true;
    cfg.start_polygon_m = 10;
    const auto res = grow_uipt(cfg, {208, 0});
    REQUIRE(res.mesh.has_value());
    // The untouched complement ring of the start polygon is also open.
    const HalfEdge outer_ring = res.mesh->twin(0);
    CHECK(res.mesh->validate({res.outer, outer_ring}).empty());
}

TEST_CASE("budget cap aborts with a distinct report") {
    GrowthConfig cfg;
    cfg.r_max = 64;
    cfg.budget = 500;
    const auto res = grow_uipt(cfg, {209, 0});
    CHECK(res.budget_exceeded);
    CHECK_FALSE(res.completed);
}
