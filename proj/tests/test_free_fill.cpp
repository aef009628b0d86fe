#include <cmath>

#include "doctest.h"
#include "free_fill.hpp"
#include "laws.hpp"
#include "sampling.hpp"
#include "stats.hpp"

using namespace uipt;

TEST_CASE("full free sampler: structural validity and exact size law") {
    const long m = 3, cells = 12, draws = 30000;
    const auto law = free_size_law(m, cells - 1);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(cells) + 1, 0);
    Pcg64 rng({101, 0});
    for (long i = 0; i < draws; ++i) {
        const auto s = sample_free_full(m, rng);
        if (i % 997 == 0) REQUIRE(s.mesh.validate({s.outer}).empty());
        CHECK(s.internal_vertices == s.mesh.n_vertices() - static_cast<long>(s.boundary.size()));
        ++counts[static_cast<std::size_t>(std::min<std::int64_t>(s.internal_vertices, cells))];
    }
    std::vector<double> probs;
    for (long n = 0; n < cells; ++n) probs.push_back(to_double(law.probs[static_cast<std::size_t>(n)]));
    probs.push_back(to_double(law.tail_mass));
    CHECK(chi_square_gof(counts, probs, 0.001).pass);
}

TEST_CASE("full free sampler: m = 0 size frequencies") {
    Pcg64 rng({102, 0});
    long zero = 0;
    const long draws = 100000;
    for (long i = 0; i < draws; ++i)
        if (sample_free_full(0, rng).internal_vertices == 0) ++zero;
    const double se = std::sqrt((8.0 / 9.0) * (1.0 / 9.0) / draws);
    CHECK(std::abs(static_cast<double>(zero) / draws - 8.0 / 9.0) < 3 * se);
}

TEST_CASE("full and size-only free samplers agree (two-sample KS)") {
    const long m = 5, n = 4000;
    Pcg64 r1({103, 0}), r2({104, 0});
    std::vector<double> a, b;
    for (long i = 0; i < n; ++i) {
        a.push_back(static_cast<double>(sample_free_full(m, r1).internal_vertices));
        b.push_back(static_cast<double>(sample_free_size(m, r2)));
    }
    const double d = ks_two_sample_statistic(a, b);
    const double n_eff = static_cast<double>(n) * n / (2.0 * n);
    CHECK(ks_pvalue(d, n_eff) >= 0.001);
}

TEST_CASE("marked full sampler: mark is internal, sizes match the size-only route") {
    const long m = 5, n = 2500;
    Pcg64 r1({105, 0}), r2({106, 0});
    std::vector<double> a, b;
    for (long i = 0; i < n; ++i) {
        const auto s = sample_marked_full(m, r1);
        REQUIRE(s.marked >= static_cast<VertexId>(s.boundary.size()));  // never a boundary vertex
        CHECK(s.mark_height >= 1);
        CHECK(s.internal_vertices >= 1);
        if (i % 499 == 0) REQUIRE(s.mesh.validate({s.outer}).empty());
        a.push_back(static_cast<double>(s.internal_vertices));
        b.push_back(static_cast<double>(sample_marked_size(m, r2)));
    }
    const double d = ks_two_sample_statistic(a, b);
    CHECK(ks_pvalue(d, n / 2.0) >= 0.001);
}

TEST_CASE("height profile: heights start at 1 and sum to the size") {
    // Histogram bookkeeping against an identically seeded full sample.
    Pcg64 rng({108, 0}), replay({108, 0});
    const auto hist = height_profile(12, rng);
    const auto s = sample_free_full(12, replay);
    std::int64_t total = 0;
    for (auto c : hist) total += c;
    CHECK(total == s.internal_vertices);

    const auto dist = s.mesh.bfs_distances_multi(s.boundary);
    for (VertexId v = static_cast<VertexId>(s.boundary.size()); v < s.mesh.n_vertices(); ++v)
        CHECK(dist[static_cast<std::size_t>(v)] >= 1);
    CHECK_THROWS_AS(height_profile(1, rng), std::invalid_argument);
}

TEST_CASE("marked sampler at large m: stable-1/2 limit of the scaled size") {
    const long m = 200, reps = 3000;
    Pcg64 rng({109, 0});
    std::vector<double> scaled;
    for (long i = 0; i < reps; ++i)
        scaled.push_back(static_cast<double>(sample_marked_size(m, rng)) / (static_cast<double>(m) * m));
    const double d = ks_statistic(scaled, [](double t) { return t <= 0 ? 0.0 : 1.0 - stable_half_tail(t); });
    CHECK(d < 0.1);

    // Negative control: a tail with the wrong index is far away.
    const double d_wrong =
        ks_statistic(scaled, [](double t) { return t <= 0 ? 0.0 : 1.0 - std::min(1.0, 2.0 / (3.0 * t)); });
    CHECK(d_wrong > 0.15);
}

TEST_CASE("budget exhaustion is reported, not silent") {
    Pcg64 rng({110, 0});
    bool threw = false;
    for (int i = 0; i < 200 && !threw; ++i) {
        try {
            (void)sample_free_full(50, rng, 40);
        } catch (const BudgetExceeded&) {
            threw = true;
        }
    }
    CHECK(threw);
}
