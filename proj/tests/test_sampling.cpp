#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "free_fill.hpp"
#include "laws.hpp"
#include "sampling.hpp"
#include "stats.hpp"

using namespace uipt;

namespace {

GofReport step_chi_square(long m, long draws, std::uint64_t seed, long shift_k = 0) {
    const long tail = std::min(20L, m);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(tail) + 1, 0);
    Pcg64 rng({seed, 0});
    for (long i = 0; i < draws; ++i) {
        long x = sample_step(m, rng);
        if (x < 0 && shift_k != 0) x = -std::min(-x + shift_k, m);  // deliberately corrupted sampler
        if (x == 1)
            ++counts[0];
        else
            ++counts[static_cast<std::size_t>(std::min(-x, tail))];
    }
    const auto law = step_law(m);
    std::vector<double> probs(counts.size(), 0.0);
    probs[0] = to_double(law.p_up);
    for (long k = 1; k < tail; ++k) probs[static_cast<std::size_t>(k)] = to_double(law.p_down[static_cast<std::size_t>(k - 1)]);
    double tail_p = 0;
    for (long k = tail; k <= m; ++k) tail_p += to_double(law.p_down[static_cast<std::size_t>(k - 1)]);
    probs[static_cast<std::size_t>(tail)] = tail_p;
    return chi_square_gof(counts, probs, 0.001);
}

}  // namespace

TEST_CASE("rng: determinism and stream separation") {
    Pcg64 a({42, 7}), b({42, 7}), c({42, 8});
    bool streams_differ = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t x = a.next();
        CHECK(x == b.next());
        streams_differ = streams_differ || x != c.next();
    }
    CHECK(streams_differ);
}

TEST_CASE("step sampler: support and forced up-step at m = 0") {
    Pcg64 rng({1, 0});
    for (long m : {1L, 2L, 7L, 40L}) {
        for (int i = 0; i < 20000; ++i) {
            const long x = sample_step(m, rng);
            CHECK(x <= 1);
            CHECK(x >= -m);
            CHECK(x != 0);
        }
    }
    for (int i = 0; i < 10; ++i) CHECK(sample_step(0, rng) == 1);
}

TEST_CASE("step sampler matches the exact law (chi-square at 0.001)") {
    CHECK(step_chi_square(1, 200000, 11).pass);
    CHECK(step_chi_square(5, 200000, 12).pass);
    CHECK(step_chi_square(50, 200000, 13).pass);
}

TEST_CASE("negative control: an off-by-one sampler fails the chi-square") {
    CHECK_FALSE(step_chi_square(5, 200000, 14, 1).pass);
}

TEST_CASE("step sampler: empirical mean tracks the drift formula") {
    Pcg64 rng({5, 0});
    const long m = 20, n = 1000000;
    double sum = 0, sum2 = 0;
    for (long i = 0; i < n; ++i) {
        const double x = static_cast<double>(sample_step(m, rng));
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - to_double(expected_step(m))) < 3 * se);
}

TEST_CASE("marked sampler: m = 0 frequencies and split support") {
    Pcg64 rng({3, 0});
    long marked = 0;
    const long n = 1000000;
    for (long i = 0; i < n; ++i) {
        const auto s = sample_marked_step(0, rng);
        CHECK(s.kind != MarkedStep::Split);
        if (s.kind == MarkedStep::NewMarked) ++marked;
    }
    const double se = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / n);
    CHECK(std::abs(static_cast<double>(marked) / n - 1.0 / 3.0) < 3 * se);

    for (int i = 0; i < 20000; ++i) {
        const auto s = sample_marked_step(9, rng);
        if (s.kind == MarkedStep::Split) {
            CHECK(s.k >= 1);
            CHECK(s.k <= 9);
        }
    }
}

TEST_CASE("marked sampler matches the exact law (chi-square)") {
    for (long m : {1L, 6L}) {
        const auto law = marked_step_law(m);
        // Cells: unmarked, marked, split 1..m.
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(m) + 2, 0);
        Pcg64 rng({21, static_cast<std::uint64_t>(m)});
        const long draws = 300000;
        for (long i = 0; i < draws; ++i) {
            const auto s = sample_marked_step(m, rng);
            if (s.kind == MarkedStep::NewUnmarked)
                ++counts[0];
            else if (s.kind == MarkedStep::NewMarked)
                ++counts[1];
            else
                ++counts[static_cast<std::size_t>(1 + s.k)];
        }
        std::vector<double> probs;
        probs.push_back(to_double(law.p_new_unmarked));
        probs.push_back(to_double(law.p_new_marked));
        for (long k = 1; k <= m; ++k) probs.push_back(to_double(law.p_split[static_cast<std::size_t>(k - 1)]));
        CHECK(chi_square_gof(counts, probs, 0.001).pass);
    }
}

TEST_CASE("free peel sampler matches the exact law (chi-square)") {
    for (long m : {0L, 1L, 2L, 7L}) {
        const auto law = free_peel_law(m);
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(m) + 2, 0);  // new, splits, glue
        Pcg64 rng({31, static_cast<std::uint64_t>(m)});
        const long draws = 300000;
        for (long i = 0; i < draws; ++i) {
            const long ev = sample_free_peel(m, rng);
            if (ev == 0)
                ++counts[0];
            else if (ev == -1)
                ++counts[static_cast<std::size_t>(m) + 1];
            else
                ++counts[static_cast<std::size_t>(ev)];
        }
        std::vector<double> probs(counts.size(), 0.0);
        probs[0] = to_double(law.p_new);
        for (long i = 1; i <= m; ++i) probs[static_cast<std::size_t>(i)] = to_double(law.p_split[static_cast<std::size_t>(i - 1)]);
        probs[static_cast<std::size_t>(m) + 1] = to_double(law.p_glue);
        if (m > 0) {
            counts.pop_back();  // glue cell unused for m >= 1
            probs.pop_back();
        }
        CHECK(chi_square_gof(counts, probs, 0.001).pass);
    }
}

TEST_CASE("free size sampler matches the exact law (chi-square, walk path)") {
    for (long m : {0L, 3L}) {
        const long cells = 12;
        const auto law = free_size_law(m, cells - 1);
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(cells) + 1, 0);
        Pcg64 rng({41, static_cast<std::uint64_t>(m)});
        const long draws = 200000;
        for (long i = 0; i < draws; ++i)
            ++counts[static_cast<std::size_t>(std::min<std::int64_t>(sample_free_size(m, rng), cells))];
        std::vector<double> probs;
        for (long n = 0; n < cells; ++n) probs.push_back(to_double(law.probs[static_cast<std::size_t>(n)]));
        probs.push_back(to_double(law.tail_mass));
        CHECK(chi_square_gof(counts, probs, 0.001).pass);
    }
}

TEST_CASE("free size sampler: rejection tail agrees with the exact weights") {
    // Small crossover forces the dominated-rejection path; compare tail
    // bucket frequencies against exact conditional weights.
    const long m = 2, n_star = 8;
    Pcg64 rng({51, 0});
    const long draws = 400000;
    std::map<std::int64_t, std::uint64_t> tail_counts;
    std::uint64_t tail_total = 0;
    for (long i = 0; i < draws; ++i) {
        const std::int64_t n = sample_free_size(m, rng, n_star);
        if (n > n_star) {
            ++tail_counts[std::min<std::int64_t>(n, 24)];
            ++tail_total;
        }
    }
    REQUIRE(tail_total > 3000);
    // Exact conditional law of the tail, bucketing 9..23 individually, >= 24 together.
    const auto law = free_size_law(m, 23);
    std::vector<double> probs;
    std::vector<std::uint64_t> counts;
    double tail_mass = to_double(free_size_law(m, n_star).tail_mass);
    for (long n = n_star + 1; n <= 23; ++n) {
        probs.push_back(to_double(law.probs[static_cast<std::size_t>(n)]) / tail_mass);
        counts.push_back(tail_counts.count(n) ? tail_counts[n] : 0);
    }
    probs.push_back(to_double(law.tail_mass) / tail_mass);
    counts.push_back(tail_counts.count(24) ? tail_counts[24] : 0);
    CHECK(chi_square_gof(counts, probs, 0.001).pass);
}

TEST_CASE("free size sampler: large-m scaling limit") {
    // For large m the law of |T|/m^2 approaches the density
    // proportional to u^{-5/2} e^{-1/(3u)}; this exercises the skip-walk
    // rejection path end to end.
    const long m = 5000;
    Pcg64 rng({61, 0});
    std::vector<double> scaled;
    for (int i = 0; i < 4000; ++i)
        scaled.push_back(static_cast<double>(sample_free_size(m, rng)) / (static_cast<double>(m) * m));
    // CDF by quadrature of the limit density (normalization 1/(Gamma(3/2) 3^{3/2})).
    const auto cdf = [](double t) {
        if (t <= 0) return 0.0;
        const double norm = std::tgamma(1.5) * std::pow(3.0, 1.5);
        double acc = 0;
        const int steps = 4000;
        // integrate u^{-5/2} e^{-1/(3u)} over (0, t] via substitution u = t v^2
        for (int i = 0; i < steps; ++i) {
            const double v0 = static_cast<double>(i) / steps, v1 = static_cast<double>(i + 1) / steps;
            const double vm = 0.5 * (v0 + v1);
            const double u = t * vm * vm;
            acc += 2.0 * t * vm * std::pow(u, -2.5) * std::exp(-1.0 / (3.0 * u)) * (v1 - v0);
        }
        return acc / norm;
    };
    const double d = ks_statistic(scaled, cdf);
    CHECK(d < 0.06);
}

TEST_CASE("marked size sampler matches the size-biased law (chi-square)") {
    // P(|T| = n) under the marked law is n phi(n,m) alpha^{-n} / Ztilde_m.
    const long m = 1, cells = 14;
    std::vector<double> probs;
    double head = 0;
    for (long n = 1; n < cells; ++n) {
        const double p = to_double(Rational(n) * phi(n, m) * pow_rational(alpha(), -n) / Ztilde(m));
        probs.push_back(p);
        head += p;
    }
    probs.push_back(1.0 - head);
    std::vector<std::uint64_t> counts(probs.size(), 0);
    Pcg64 rng({71, 0});
    const long draws = 200000;
    for (long i = 0; i < draws; ++i) {
        const std::int64_t n = sample_marked_size(m, rng);
        CHECK(n >= 1);
        ++counts[static_cast<std::size_t>(std::min<std::int64_t>(n, cells) - 1)];
    }
    CHECK(chi_square_gof(counts, probs, 0.001).pass);
}

TEST_CASE("samplers are deterministic per (seed, stream)") {
    Pcg64 a({9, 5}), b({9, 5});
    for (int i = 0; i < 2000; ++i) {
        CHECK(sample_step(17, a) == sample_step(17, b));
        CHECK(sample_free_size(4, a) == sample_free_size(4, b));
    }
}
