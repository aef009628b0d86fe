#pragma once

#include <cstdint>
#include <vector>

#include "rng.hpp"

namespace uipt {

// Standalone simulation of the boundary-size chain M_{t+1} = M_t + X_t.
// State 0 is treated as absorbing here (the hitting-time formulas treat 0
// as a target); the growth engine, where a 2-gon boundary keeps growing,
// handles m = 0 itself.
struct ChainConfig {
    long m0 = 1;
    std::uint64_t horizon = 0;
    std::vector<long> targets;            // hit flags recorded for these states
    std::vector<std::uint64_t> checkpoints;  // strictly increasing step indices
    bool track_vt = false;                // accumulate V_T(2), V_T(3) at checkpoints
    long stop_above = 0;                  // optional early stop once M >= this (0 = off)
};

struct ChainResult {
    std::vector<long> checkpoint_m;       // M at each checkpoint; -1 once stopped
    std::vector<double> vt2, vt3;         // V_T(gamma) at checkpoints (if tracked)
    std::vector<char> hit;                // per target
    std::uint64_t absorbed_at = 0;        // step of absorption at 0 (0 = none)
    std::uint64_t steps_run = 0;
    long final_m = 0;
    long max_m = 0;
    long min_m = 0;
};

ChainResult run_chain(const ChainConfig& cfg, RandomSource src);

// Log-spaced checkpoints: powers of two in [lo, horizon], plus horizon.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon, std::uint64_t lo = 16);

// Least-squares slope of log M_t against log t over the top part of the
// checkpoint range, one fit per replica, averaged. spread is the sample
// standard deviation across replicas; replicas whose chain was absorbed
// before the fit range are excluded and counted in degenerate.
struct SlopeProbe {
    double slope = 0;
    double spread = 0;
    long replicas_used = 0;
    long degenerate = 0;
};
SlopeProbe growth_exponent_probe(std::uint64_t horizon, long replicas, RandomSource src, int threads = 0,
                                 long m0 = 1);

// Scaling of the running power sums V_T(gamma) = sum_{t<=T} |X_t|^gamma for
// gamma = 2, 3 along chain trajectories; slopes of log V_T against log T.
struct HeavyTailProbe {
    SlopeProbe vt2;
    SlopeProbe vt3;
};
HeavyTailProbe heavy_tail_probe(std::uint64_t horizon, long replicas, RandomSource src, int threads = 0);

}  // namespace uipt
