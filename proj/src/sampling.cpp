#include "sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "laws.hpp"

namespace uipt {

long sample_step(long m, Pcg64& rng) {
    if (m < 0) throw std::invalid_argument("sample_step: negative m");
    if (m == 0) return 1;
    double u = rng.uniform();
    const double p_up = static_cast<double>(2 * m + 3) / static_cast<double>(3 * m + 3);
    if (u < p_up) return 1;
    u -= p_up;
    double p = static_cast<double>(m) / static_cast<double>(2 * (2 * m + 1));
    long k = 1;
    while (k < m && u >= p) {
        u -= p;
        p *= static_cast<double>((2 * k - 1) * (m - k)) / static_cast<double>((k + 2) * (2 * m - 2 * k + 1));
        ++k;
    }
    return -k;
}

MarkedStep sample_marked_step(long m, Pcg64& rng) {
    if (m < 0) throw std::invalid_argument("sample_marked_step: negative m");
    double u = rng.uniform();
    const double p_nu = static_cast<double>((2 * m + 3) * (m + 2)) / static_cast<double>(3 * (m + 1) * (m + 3));
    if (u < p_nu) return {MarkedStep::NewUnmarked, 0};
    u -= p_nu;
    const double p_nm = p_nu * 6.0 / static_cast<double>((2 * m + 3) * (2 * m + 4));
    if (u < p_nm || m == 0) return {MarkedStep::NewMarked, 0};
    u -= p_nm;
    double p = static_cast<double>(m) * static_cast<double>(m + 2) /
               (2.0 * static_cast<double>(2 * m + 1) * static_cast<double>(m + 1));
    long k = 1;
    while (k < m && u >= p) {
        u -= p;
        const double j = static_cast<double>(m - k);
        p *= static_cast<double>((2 * k - 1) * (2 * k)) * j * (j + 2.0) /
             (static_cast<double>(k * (k + 2)) * (2.0 * j + 1.0) * (2.0 * j + 2.0));
        ++k;
    }
    return {MarkedStep::Split, k};
}

long sample_free_peel(long m, Pcg64& rng) {
    if (m < 0) throw std::invalid_argument("sample_free_peel: negative m");
    double u = rng.uniform();
    const double p_new = static_cast<double>(2 * m + 1) / static_cast<double>(3 * (m + 3));
    if (u < p_new) return 0;
    if (m == 0) return -1;
    u -= p_new;
    // Fold the symmetric split law onto i <= (m+1)/2: weight 2 P(i) for
    // paired entries, P(i) for the self-paired middle one (odd m).
    const long mid = (m + 1) / 2;
    const bool has_center = (m % 2 == 1);
    double p = static_cast<double>(m + 2) / static_cast<double>(4 * (2 * m - 1));
    long i = 1;
    for (;;) {
        const double w = (has_center && i == mid) ? p : 2.0 * p;
        if (u < w || i >= mid) break;
        u -= w;
        const double j = static_cast<double>(m - i);
        p *= static_cast<double>((2 * i - 1) * (2 * i)) * j * (j + 2.0) /
             (static_cast<double>(i * (i + 2)) * (2.0 * j - 1.0) * (2.0 * j));
        ++i;
    }
    if (has_center && i == mid) return i;
    return rng.coin() ? i : m + 1 - i;
}

namespace {

// x^{-3/2} - (x+1)^{-3/2} without cancellation.
double pow32_diff(double x) {
    return -std::pow(x, -1.5) * std::expm1(-1.5 * std::log1p(1.0 / x));
}

std::int64_t sample_tail(long m, long n0, Pcg64& rng) {
    // Conditional law on n > n0, proportional to w_n = phi(n,m) alpha^{-n}/Z_m.
    // Proposal: N with P(N = n) proportional to the integral of x^{-5/2} over
    // (n-1/2, n+1/2), drawn by inverse transform of the continuous tail.
    // Envelope constant: c_m = C_m / Z_m = sup_n w_n n^{5/2}.
    const double log_c = log_C(m) - log_Z(m);
    const double x0 = static_cast<double>(n0) + 0.5;
    for (int tries = 0; tries < 100000000; ++tries) {
        const double v = rng.uniform_pos();
        const double x = x0 * std::pow(v, -2.0 / 3.0);
        if (x >= 9.0e15) continue;  // keep integer rounding exact
        const double nd = std::floor(x + 0.5);
        const std::int64_t n = static_cast<std::int64_t>(nd);
        const double log_env = log_c + std::log(2.0 / 3.0) + std::log(pow32_diff(nd - 0.5));
        const double log_w = log_free_size_prob(n, m);
        const double log_ratio = log_w - log_env;
        if (log_ratio > 1e-9) throw std::logic_error("sample_free_size: envelope violated");
        if (std::log(rng.uniform_pos()) < log_ratio) return n;
    }
    throw std::logic_error("sample_free_size: rejection did not terminate");
}

}  // namespace

std::int64_t sample_free_size(long m, Pcg64& rng, long n_star) {
    if (m < 0 || n_star < 1) throw std::invalid_argument("sample_free_size: bad arguments");
    long n0 = n_star;
    const double m2_scaled = static_cast<double>(m) * static_cast<double>(m) / 400.0;
    if (m2_scaled > static_cast<double>(n_star)) {
        // Head mass below m^2/400 is under e^{-133}; skip the walk entirely.
        n0 = static_cast<long>(m2_scaled) + 1;
        return sample_tail(m, n0, rng);
    }
    double u = rng.uniform();
    double w = static_cast<double>(m + 2) * std::exp(static_cast<double>(m + 1) * std::log(4.0 / 9.0));
    for (long n = 0; n <= n0; ++n) {
        if (u < w) return n;
        u -= w;
        w *= 4.0 * static_cast<double>(2 * m + 3 * n + 1) / (27.0 * static_cast<double>(n + 1));
        w *= static_cast<double>(2 * m + 3 * n + 2) / static_cast<double>(2 * m + 2 * n + 3);
        w *= static_cast<double>(2 * m + 3 * n + 3) / static_cast<double>(2 * m + 2 * n + 4);
    }
    return sample_tail(m, n0, rng);
}

}  // namespace uipt
