#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mesh.hpp"
#include "rng.hpp"

namespace uipt {

// Bernoulli site percolation on the growing triangulation. The root vertex
// is black; its two root-triangle neighbors are colored independently with
// bias p. Death is the first time the frontier holds no black vertex (a
// white cycle then encloses the root's black cluster); survival is censored
// at the horizon and reported as such.
//
// The reduced engine tracks only (M, B, W): on X = +1 the new vertex is
// black with probability p; on X = -k the removed arc is black-side or
// white-side with probability 1/2 each, clamped so no count goes negative
// (removing past one color borrows from the other). The full engine grows
// the mesh, peeling at a bichromatic frontier edge whenever one exists, and
// realizes exactly the same law; the two are cross-validated in tests.

struct PercConfig {
    double p = 0.5;
    std::uint64_t horizon = 10000;
    bool full = false;
    bool color_fills = false;           // color hole interiors too (full mode)
    std::int64_t budget = 1'000'000'000;  // full mode fill budget
    std::uint64_t check_arcs_every = 0;  // full mode: assert color arcs contiguous (0 = off)
};

struct PercOutcome {
    bool died = false;
    std::uint64_t death_step = 0;
    std::uint64_t steps_run = 0;
    std::uint64_t max_b = 0;
    bool budget_exceeded = false;
};

// Clamp used when a removal crosses zero.
inline std::pair<std::int64_t, std::int64_t> clamp_counts(std::int64_t b, std::int64_t w) {
    if (b >= 0 && w >= 0) return {b, w};
    if (b < 0) return {0, b + w};
    return {b + w, 0};
}

PercOutcome run_percolation(const PercConfig& cfg, RandomSource src);

struct SurvivalEstimate {
    double p = 0;
    std::uint64_t replicas = 0;
    std::uint64_t survived = 0;
    double fraction = 0;
    double ci_lo = 0, ci_hi = 0;
    std::uint64_t budget_exceeded = 0;
};
SurvivalEstimate estimate_survival(const PercConfig& cfg, std::uint64_t replicas, RandomSource src,
                                   int threads = 0);

// Survival fractions over a list of p values; same horizon and replica
// count for each. Streams advance so every (p, replica) pair is independent.
std::vector<SurvivalEstimate> sweep(const std::vector<double>& p_list, std::uint64_t horizon,
                                    std::uint64_t replicas, bool full, RandomSource src, int threads = 0);

// Linear interpolation of the p at which survival crosses `level` on a
// sweep table; requires the table to bracket the level.
std::optional<double> crossing_estimate(const std::vector<SurvivalEstimate>& table, double level);

// max_B statistics for subcritical runs: medians of max_B over replicas.
struct LogBoundProbe {
    std::uint64_t horizon = 0;
    double median_max_b = 0;
    double ratio_to_log = 0;  // median / log(horizon)
};
LogBoundProbe subcritical_logbound_probe(double p, std::uint64_t horizon, std::uint64_t replicas,
                                         RandomSource src, int threads = 0);

}  // namespace uipt
