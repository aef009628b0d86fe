#include "laws.hpp"

#include <cmath>
#include <stdexcept>

namespace uipt {

Rational phi(long n, long m) {
    if (n < 0 || m < 0) throw std::invalid_argument("phi: negative index");
    Rational r(Integer(1) << (n + 1));  // 2^{n+1}
    r *= factorial(2 * m + 1);
    r *= factorial(2 * m + 3 * n);
    r /= factorial(m) * factorial(m);
    r /= factorial(n);
    r /= factorial(2 * m + 2 * n + 2);
    return r;
}

Rational Z(long m) {
    if (m < 0) throw std::invalid_argument("Z: negative m");
    Rational r(factorial(2 * m), factorial(m) * factorial(m + 2));
    r.canonicalize();
    return r * pow_rational(Rational(9, 4), m + 1);
}

Rational Z_of_theta(long m, const Rational& theta) {
    if (m < 0) throw std::invalid_argument("Z_of_theta: negative m");
    if (theta < 0 || theta > Rational(1, 6)) throw std::invalid_argument("Z_of_theta: theta outside [0, 1/6]");
    Rational r(factorial(2 * m), factorial(m) * factorial(m + 2));
    r.canonicalize();
    r *= (1 - 6 * theta) * m + 2 - 6 * theta;
    r *= pow_rational(1 - 2 * theta, -(2 * m + 2));
    return r;
}

Rational Ztilde(long m) {
    if (m < 0) throw std::invalid_argument("Ztilde: negative m");
    Rational r(binomial(2 * m + 2, m), 6);
    r.canonicalize();
    return r * pow_rational(Rational(9, 4), m + 1);
}

Rational free_size_mean(long m) {
    if (m < 0) throw std::invalid_argument("free_size_mean: negative m");
    Rational r((m + 1) * (2 * m + 1), 3);
    r.canonicalize();
    return r;
}

StepLaw step_law(long m) {
    if (m < 1) throw std::invalid_argument("step_law: m must be >= 1");
    StepLaw law;
    law.m = m;
    law.p_up = Rational(2 * m + 3, 3 * m + 3);
    law.p_up.canonicalize();
    law.p_down.reserve(static_cast<std::size_t>(m));
    // p_down[1] = m / (2(2m+1)); ratio p_{k+1}/p_k = (2k-1)(m-k) / ((k+2)(2m-2k+1)).
    Rational p(m, 2 * (2 * m + 1));
    p.canonicalize();
    law.p_down.push_back(p);
    for (long k = 1; k < m; ++k) {
        p *= Rational((2 * k - 1) * (m - k), (k + 2) * (2 * m - 2 * k + 1));
        p.canonicalize();
        law.p_down.push_back(p);
    }
    return law;
}

Rational step_limit_down(long k) {
    if (k < 1) throw std::invalid_argument("step_limit_down: k must be >= 1");
    Rational r(2 * factorial(2 * k - 2), factorial(k - 1) * factorial(k + 1));
    r.canonicalize();
    return r * pow_rational(Rational(1, 4), k);
}

MarkedStepLaw marked_step_law(long m) {
    if (m < 0) throw std::invalid_argument("marked_step_law: negative m");
    MarkedStepLaw law;
    law.m = m;
    law.p_new_unmarked = Rational((2 * m + 3) * (m + 2), 3 * (m + 1) * (m + 3));
    law.p_new_unmarked.canonicalize();
    law.p_new_marked = law.p_new_unmarked * Rational(6, (2 * m + 3) * (2 * m + 4));
    law.p_new_marked.canonicalize();
    if (m >= 1) {
        law.p_split.reserve(static_cast<std::size_t>(m));
        // p_split[1] = m(m+2) / (2(2m+1)(m+1)); ratio
        // p_{k+1}/p_k = (2k-1)(2k)(m-k)(m-k+2) / (k(k+2)(2m-2k+1)(2m-2k+2)).
        Rational p(m * (m + 2), 2 * (2 * m + 1) * (m + 1));
        p.canonicalize();
        law.p_split.push_back(p);
        for (long k = 1; k < m; ++k) {
            const long j = m - k;
            p *= Rational((2 * k - 1) * (2 * k) * j * (j + 2), k * (k + 2) * (2 * j + 1) * (2 * j + 2));
            p.canonicalize();
            law.p_split.push_back(p);
        }
    }
    return law;
}

FreePeelLaw free_peel_law(long m) {
    if (m < 0) throw std::invalid_argument("free_peel_law: negative m");
    FreePeelLaw law;
    law.m = m;
    law.p_new = Rational(2 * m + 1, 3 * (m + 3));
    law.p_new.canonicalize();
    law.p_glue = 0;
    if (m == 0) {
        law.p_glue = 1 - law.p_new;  // 8/9 = 1/Z_0
        return law;
    }
    law.p_split.reserve(static_cast<std::size_t>(m));
    // p_split[1] = (m+2) / (4(2m-1)); ratio
    // p_{i+1}/p_i = (2i-1)(2i)(m-i)(m-i+2) / (i(i+2)(2m-2i-1)(2m-2i)).
    Rational p(m + 2, 4 * (2 * m - 1));
    p.canonicalize();
    law.p_split.push_back(p);
    for (long i = 1; i < m; ++i) {
        const long j = m - i;
        p *= Rational((2 * i - 1) * (2 * i) * j * (j + 2), i * (i + 2) * (2 * j - 1) * (2 * j));
        p.canonicalize();
        law.p_split.push_back(p);
    }
    return law;
}

FreeSizeLaw free_size_law(long m, long n_max) {
    if (m < 0 || n_max < 1) throw std::invalid_argument("free_size_law: bad arguments");
    FreeSizeLaw law;
    law.m = m;
    law.probs.reserve(static_cast<std::size_t>(n_max) + 1);
    // w_0 = (m+2) (4/9)^{m+1}; ratio w_{n+1}/w_n =
    // (4/27)(2m+3n+1)(2m+3n+2)(2m+3n+3) / ((n+1)(2m+2n+3)(2m+2n+4)).
    Rational w(m + 2, 1);
    w *= pow_rational(Rational(4, 9), m + 1);
    Rational total = w;
    law.probs.push_back(w);
    for (long n = 0; n < n_max; ++n) {
        w *= Rational(4 * (2 * m + 3 * n + 1), 27 * (n + 1));
        w *= Rational(2 * m + 3 * n + 2, 2 * m + 2 * n + 3);
        w *= Rational(2 * m + 3 * n + 3, 2 * m + 2 * n + 4);
        w.canonicalize();
        law.probs.push_back(w);
        total += w;
    }
    law.tail_mass = 1 - total;
    return law;
}

Rational expected_step(long m) {
    if (m < 1) throw std::invalid_argument("expected_step: m must be >= 1");
    Rational r(factorial(m) * factorial(m), factorial(2 * m + 1));
    r.canonicalize();
    return r * pow_rational(Rational(4), m);
}

namespace {
// Descending factorial (x)_k = x (x-1) ... (x-k+1) for rational x.
Rational descending(const Rational& x, long k) {
    Rational r(1);
    for (long j = 0; j < k; ++j) r *= x - j;
    return r;
}
}  // namespace

Rational hitting_prob(long n, long m) {
    if (n < 1 || m < 0) throw std::invalid_argument("hitting_prob: need n >= 1, m >= 0");
    if (m >= n) return Rational(1);  // the numerator's zero factor
    Rational r = 1 - descending(Rational(n), m + 1) / descending(Rational(n) + Rational(1, 2), m + 1);
    r.canonicalize();
    return r;
}

Rational expected_visits(long n) {
    if (n < 0) throw std::invalid_argument("expected_visits: negative n");
    Rational r(3 * n + 3, 2 * n + 3);
    r *= descending(Rational(n) + Rational(3, 2), n + 1);
    r /= factorial(n + 1);
    r.canonicalize();
    return r;
}

double stable_half_tail(double t) {
    if (!(t > 0)) throw std::invalid_argument("stable_half_tail: t must be positive");
    return std::erf(1.0 / std::sqrt(3.0 * t));
}

double log_phi(long n, long m) {
    if (n < 0 || m < 0) throw std::invalid_argument("log_phi: negative index");
    return (n + 1) * std::log(2.0) + std::lgamma(2.0 * m + 2.0) + std::lgamma(2.0 * m + 3.0 * n + 1.0) -
           2.0 * std::lgamma(m + 1.0) - std::lgamma(n + 1.0) - std::lgamma(2.0 * m + 2.0 * n + 3.0);
}

double log_Z(long m) {
    return std::lgamma(2.0 * m + 1.0) - std::lgamma(m + 1.0) - std::lgamma(m + 3.0) + (m + 1) * std::log(2.25);
}

double log_Ztilde(long m) {
    return std::lgamma(2.0 * m + 3.0) - std::lgamma(m + 1.0) - std::lgamma(m + 3.0) - std::log(6.0) +
           (m + 1) * std::log(2.25);
}

double log_C(long m) {
    return 0.5 * std::log(3.0) + std::lgamma(2.0 * m + 2.0) - std::log(4.0) - 0.5 * std::log(M_PI) -
           2.0 * std::lgamma(m + 1.0) + m * std::log(2.25);
}

double log_free_size_prob(long n, long m) {
    return log_phi(n, m) - n * std::log(13.5) - log_Z(m);
}

}  // namespace uipt
