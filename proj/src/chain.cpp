#include "chain.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"
#include "sampling.hpp"
#include "stats.hpp"

namespace uipt {

ChainResult run_chain(const ChainConfig& cfg, RandomSource src) {
    if (cfg.m0 < 1) throw std::invalid_argument("run_chain: m0 must be >= 1");
    Pcg64 rng(src);
    ChainResult res;
    res.hit.assign(cfg.targets.size(), 0);
    res.checkpoint_m.assign(cfg.checkpoints.size(), -1);
    if (cfg.track_vt) {
        res.vt2.assign(cfg.checkpoints.size(), 0.0);
        res.vt3.assign(cfg.checkpoints.size(), 0.0);
    }

    long m = cfg.m0;
    res.max_m = res.min_m = m;
    for (std::size_t i = 0; i < cfg.targets.size(); ++i)
        if (cfg.targets[i] == m) res.hit[i] = 1;

    double vt2 = 0, vt3 = 0;
    std::size_t cp = 0;
    bool running = true;
    std::uint64_t t = 0;
    while (t < cfg.horizon && running) {
        const long x = sample_step(m, rng);
        ++t;
        m += x;
        const double ax = std::abs(static_cast<double>(x));
        vt2 += ax * ax;
        vt3 += ax * ax * ax;
        res.max_m = std::max(res.max_m, m);
        res.min_m = std::min(res.min_m, m);
        for (std::size_t i = 0; i < cfg.targets.size(); ++i)
            if (cfg.targets[i] == m) res.hit[i] = 1;
        while (cp < cfg.checkpoints.size() && cfg.checkpoints[cp] == t) {
            res.checkpoint_m[cp] = m;
            if (cfg.track_vt) {
                res.vt2[cp] = vt2;
                res.vt3[cp] = vt3;
            }
            ++cp;
        }
        if (m == 0) {
            res.absorbed_at = t;
            running = false;
        }
        if (cfg.stop_above > 0 && m >= cfg.stop_above) running = false;
    }
    res.steps_run = t;
    res.final_m = m;
    return res;
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon, std::uint64_t lo) {
    std::vector<std::uint64_t> cps;
    for (std::uint64_t c = lo; c < horizon; c *= 2) cps.push_back(c);
    if (horizon > 0) cps.push_back(horizon);
    return cps;
}

namespace {
SlopeProbe summarize_slopes(const std::vector<double>& slopes) {
    SlopeProbe probe;
    double sum = 0, sum2 = 0;
    for (double s : slopes) {
        if (std::isnan(s)) {
            ++probe.degenerate;
            continue;
        }
        sum += s;
        sum2 += s * s;
        ++probe.replicas_used;
    }
    if (probe.replicas_used == 0) return probe;
    probe.slope = sum / probe.replicas_used;
    probe.spread = probe.replicas_used > 1
                       ? std::sqrt(std::max(0.0, (sum2 - sum * sum / probe.replicas_used) / (probe.replicas_used - 1)))
                       : std::nan("");
    return probe;
}
}  // namespace

HeavyTailProbe heavy_tail_probe(std::uint64_t horizon, long replicas, RandomSource src, int threads) {
    if (horizon < 10000) throw std::invalid_argument("heavy_tail_probe: horizon must be >= 10000");
    if (replicas < 1) throw std::invalid_argument("heavy_tail_probe: need replicas >= 1");
    ChainConfig cfg;
    cfg.m0 = 1;
    cfg.horizon = horizon;
    cfg.track_vt = true;
    std::uint64_t lo = horizon;
    for (int i = 0; i < 10 && lo > 16; ++i) lo /= 2;
    cfg.checkpoints = default_checkpoints(horizon, std::max<std::uint64_t>(lo, 16));

    std::vector<double> s2(static_cast<std::size_t>(replicas), std::nan(""));
    std::vector<double> s3(static_cast<std::size_t>(replicas), std::nan(""));
    parallel_for(replicas, threads, [&](long r) {
        ChainResult cr = run_chain(cfg, src.with_stream(src.stream + static_cast<std::uint64_t>(r)));
        std::vector<double> xs, y2, y3;
        for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
            if (cr.checkpoint_m[i] >= 0 && cr.vt2[i] > 0 && cr.vt3[i] > 0) {
                xs.push_back(std::log(static_cast<double>(cfg.checkpoints[i])));
                y2.push_back(std::log(cr.vt2[i]));
                y3.push_back(std::log(cr.vt3[i]));
            }
        }
        if (xs.size() >= 4) {
            s2[static_cast<std::size_t>(r)] = fit_line(xs, y2).slope;
            s3[static_cast<std::size_t>(r)] = fit_line(xs, y3).slope;
        }
    });
    return {summarize_slopes(s2), summarize_slopes(s3)};
}

SlopeProbe growth_exponent_probe(std::uint64_t horizon, long replicas, RandomSource src, int threads, long m0) {
    if (horizon < 1000) throw std::invalid_argument("growth_exponent_probe: horizon must be >= 1000");
    if (replicas < 1) throw std::invalid_argument("growth_exponent_probe: need replicas >= 1");
    ChainConfig cfg;
    cfg.m0 = m0;
    cfg.horizon = horizon;
    // Fit over the top ten octaves so the small-m transient does not bias
    // the slope.
    std::uint64_t lo = horizon;
    for (int i = 0; i < 10 && lo > 16; ++i) lo /= 2;
    cfg.checkpoints = default_checkpoints(horizon, std::max<std::uint64_t>(lo, 16));

    std::vector<double> slopes(static_cast<std::size_t>(replicas), std::nan(""));
    parallel_for(replicas, threads, [&](long r) {
        ChainResult cr = run_chain(cfg, src.with_stream(src.stream + static_cast<std::uint64_t>(r)));
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
            if (cr.checkpoint_m[i] > 0) {
                xs.push_back(std::log(static_cast<double>(cfg.checkpoints[i])));
                ys.push_back(std::log(static_cast<double>(cr.checkpoint_m[i])));
            }
        }
        if (xs.size() >= 4) slopes[static_cast<std::size_t>(r)] = fit_line(xs, ys).slope;
    });
    return summarize_slopes(slopes);
}

}  // namespace uipt
