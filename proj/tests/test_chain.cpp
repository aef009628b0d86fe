#include <cmath>

#include "doctest.h"
#include "chain.hpp"
#include "laws.hpp"
#include "stats.hpp"

using namespace uipt;

TEST_CASE("run_chain: horizon 0 keeps only the initial state") {
    ChainConfig cfg;
    cfg.m0 = 4;
    cfg.horizon = 0;
    cfg.targets = {4, 0};
    const auto res = run_chain(cfg, {300, 0});
    CHECK(res.steps_run == 0);
    CHECK(res.final_m == 4);
    CHECK(res.hit[0] == 1);  // the initial state counts as visited
    CHECK(res.hit[1] == 0);
    CHECK(res.absorbed_at == 0);
}

TEST_CASE("run_chain: trajectories are deterministic and respect the step support") {
    ChainConfig cfg;
    cfg.m0 = 3;
    cfg.horizon = 5000;
    cfg.checkpoints = default_checkpoints(cfg.horizon);
    const auto a = run_chain(cfg, {301, 7});
    const auto b = run_chain(cfg, {301, 7});
    CHECK(a.checkpoint_m == b.checkpoint_m);
    CHECK(a.final_m == b.final_m);
    CHECK(a.min_m >= 0);
}

TEST_CASE("run_chain: absorption at zero is recorded and final") {
    long absorbed = 0;
    for (std::uint64_t s = 0; s < 2000; ++s) {
        ChainConfig cfg;
        cfg.m0 = 1;
        cfg.horizon = 2000;
        const auto res = run_chain(cfg, {302, s});
        if (res.absorbed_at > 0) {
            ++absorbed;
            CHECK(res.final_m == 0);
            CHECK(res.steps_run == res.absorbed_at);
        }
    }
    // From m0 = 1 the chain hits 0 with probability 1/3.
    const double frac = absorbed / 2000.0;
    CHECK(frac > 1.0 / 3.0 - 3 * std::sqrt(2.0 / 9.0 / 2000.0));
    CHECK(frac < 1.0 / 3.0 + 3 * std::sqrt(2.0 / 9.0 / 2000.0));
}

TEST_CASE("hit frequencies match the hitting-probability formula") {
    // m0 = 5, target 2. Early stop once the chain clears 2500: the missed
    // hitting mass from above is ~ 3/(2 * 2500), far below the tolerance.
    const long reps = 20000;
    long hits = 0;
    for (long r = 0; r < reps; ++r) {
        ChainConfig cfg;
        cfg.m0 = 5;
        cfg.horizon = 10000000;
        cfg.targets = {2};
        cfg.stop_above = 2500;
        const auto res = run_chain(cfg, {303, static_cast<std::uint64_t>(r)});
        hits += res.hit[0];
    }
    const double expect = to_double(hitting_prob(5, 2));
    const double se = std::sqrt(expect * (1 - expect) / reps);
    CHECK(std::abs(static_cast<double>(hits) / reps - expect) < 3 * se + 3.0 / (2.0 * 2500.0));
}

TEST_CASE("mean visit counts match the geometric formula") {
    // Start at n = 5 and count visits to 5 (the start counts as one visit):
    // same mean as the visits-from-zero claim since upward moves are unit.
    const long reps = 4000, n = 5;
    const std::uint64_t horizon = 30000;
    double total = 0;
    for (long r = 0; r < reps; ++r) {
        ChainConfig cfg;
        cfg.m0 = n;
        cfg.horizon = horizon;
        cfg.checkpoints = {};
        Pcg64* unused = nullptr;
        (void)unused;
        // Count visits by running manually through checkpoints of 1 step.
        // run_chain records hits, not visit counts, so walk directly:
        long visits = 1;
        long m = n;
        Pcg64 rng({304, static_cast<std::uint64_t>(r)});
        for (std::uint64_t t = 0; t < horizon && m > 0; ++t) {
            m += sample_step(m, rng);
            if (m == n) ++visits;
            if (m > 4000) break;  // residual return mass ~ 3/4000
        }
        total += visits;
    }
    const double mean = total / reps;
    const double expect = to_double(expected_visits(n));
    CHECK(std::abs(mean - expect) / expect < 0.05);
}

TEST_CASE("growth exponent probe: slope near 2/3, spread shrinks with horizon") {
    const auto p6 = growth_exponent_probe(1000000, 12, {305, 0}, 0);
    CHECK(p6.replicas_used == 12);
    CHECK(p6.slope > 0.55);
    CHECK(p6.slope < 0.8);

    const auto p3 = growth_exponent_probe(2000, 12, {306, 0}, 0);
    CHECK(p3.spread > p6.spread * 0.9);  // long horizons concentrate

    const auto single = growth_exponent_probe(100000, 1, {307, 0}, 0);
    CHECK(single.replicas_used == 1);
    CHECK(std::isnan(single.spread));
}

TEST_CASE("heavy tail probe: V_T slopes near 4/3 and 2") {
    const auto probe = heavy_tail_probe(300000, 12, {308, 0}, 0);
    CHECK(probe.vt2.slope > 1.1);
    CHECK(probe.vt2.slope < 1.6);
    CHECK(probe.vt3.slope > 1.6);
    CHECK(probe.vt3.slope < 2.4);
}

TEST_CASE("V_T accumulators are monotone in T") {
    ChainConfig cfg;
    cfg.m0 = 1;
    cfg.horizon = 100000;
    cfg.track_vt = true;
    cfg.checkpoints = default_checkpoints(cfg.horizon);
    const auto res = run_chain(cfg, {309, 0});
    for (std::size_t i = 1; i < res.vt2.size(); ++i) {
        if (res.checkpoint_m[i] < 0) break;
        CHECK(res.vt2[i] >= res.vt2[i - 1]);
        CHECK(res.vt3[i] >= res.vt3[i - 1]);
    }
}
