#pragma once

#include <map>
#include <vector>

#include "rational.hpp"

namespace uipt {

// Exact laws of the type II triangulation ensemble with fugacity
// alpha = 27/2 per internal vertex. Boundary parameter m means the polygon
// has m+2 boundary vertices. All probabilities here are exact rationals;
// the log_* mirror below serves indices too large for comfort.

inline Rational alpha() { return Rational(27, 2); }

// Count of rooted type II triangulations of an (m+2)-gon with n internal
// vertices. The value for n = m = 0 is 1 by convention: it stands for
// closing a 2-gon by gluing its two edges together.
Rational phi(long n, long m);

// Partition function Z_m = sum_n phi(n,m) alpha^{-n}
//                        = (2m)!/(m!(m+2)!) (9/4)^{m+1}.
Rational Z(long m);

// Z_m(t) evaluated through the parametrization t = theta (1-2 theta)^2 with
// theta in [0, 1/6]; theta = 1/6 recovers Z(m).
Rational Z_of_theta(long m, const Rational& theta);

// Vertex-marked partition function
// Ztilde_m = sum_n n phi(n,m) alpha^{-n} = (1/6) C(2m+2, m) (9/4)^{m+1}.
Rational Ztilde(long m);

// Mean number of internal vertices of a free triangulation of an
// (m+2)-gon: (m+1)(2m+1)/3 = Ztilde_m / Z_m.
Rational free_size_mean(long m);

// Boundary-size chain step law at boundary parameter m >= 1.
//   P(X = +1) = (2m+3)/(3m+3)
//   P(X = -k) = 2 (2k-2)! / ((k-1)!(k+1)!) * m!^2 (2m-2k+1)! / ((m-k)!^2 (2m+1)!)
// The factor 2 (the removed arc can lie on either side of the peel edge) is
// already inside p_down; the side is drawn separately at sampling time.
struct StepLaw {
    long m = 0;
    Rational p_up;
    std::vector<Rational> p_down;  // p_down[k-1] = P(X = -k), k = 1..m
};
StepLaw step_law(long m);

// Limit of P(X = -k) as m -> infinity: p_k = 2(2k-2)!/((k-1)!(k+1)! 4^k).
Rational step_limit_down(long k);

// Step law of the peeling process for a vertex-marked free triangulation.
//   new unmarked: Ztilde_{m+1} / (alpha Ztilde_m)
//   new marked:   Z_{m+1} / (alpha Ztilde_m)
//   split -k:     2 Ztilde_{m-k} Z_{k-1} / Ztilde_m
// Exact mass computation shows normalization holds only with the factor 2
// on splits (the detached free part can lie on either side), matching the
// unmarked chain's convention.
struct MarkedStepLaw {
    long m = 0;
    Rational p_new_unmarked;
    Rational p_new_marked;
    std::vector<Rational> p_split;  // p_split[k-1] = P(X = -k), k = 1..m
};
MarkedStepLaw marked_step_law(long m);

// Peel law inside a free triangulation of an (m+2)-gon.
//   new vertex:  Z_{m+1} / (alpha Z_m)
//   y = x_i:     Z_{i-1} Z_{m-i} / Z_m, i = 1..m (each i a distinct vertex)
//   glue (m=0): residual 1/Z_0, the phi_{0,0} = 1 convention.
struct FreePeelLaw {
    long m = 0;
    Rational p_new;
    std::vector<Rational> p_split;  // p_split[i-1] = P(y = x_i), i = 1..m
    Rational p_glue;                // nonzero only for m = 0
};
FreePeelLaw free_peel_law(long m);

// Size law of the free triangulation: P(|T| = n) = phi(n,m) alpha^{-n} / Z_m
// tabulated for n <= n_max, with the exact remaining tail mass.
struct FreeSizeLaw {
    long m = 0;
    std::vector<Rational> probs;  // probs[n], n = 0..n_max
    Rational tail_mass;
};
FreeSizeLaw free_size_law(long m, long n_max);

// Drift of the boundary chain: E(X | M = m) = 4^m m!^2 / (2m+1)!.
Rational expected_step(long m);

// Probability that the chain started at n ever hits m:
// 1 - (n)_{m+1} / (n+1/2)_{m+1} with (x)_k the descending factorial.
// Equals 1 for m >= n and 1/(2n+1) for m = 0.
Rational hitting_prob(long n, long m);

// Mean of the (geometric) number of visits to n:
// (3n+3)/(2n+3) * (n+3/2)_{n+1} / (n+1)!.
Rational expected_visits(long n);

// Tail of the limit law of m^{-2}|T| for the marked ensemble:
//   (1/sqrt(3 pi)) int_t^inf x^{-3/2} e^{-1/(3x)} dx = erf(1/sqrt(3t)).
// The closed form is cross-checked against adaptive quadrature in tests.
double stable_half_tail(double t);

// ---- log-space mirror -------------------------------------------------
// Natural logs of the quantities above, for indices where exact rationals
// are impractical. Relative error <= 1e-12 on the overlap with the exact
// path (validated in tests).

double log_phi(long n, long m);
double log_Z(long m);
double log_Ztilde(long m);
// log of C_m = sqrt(3) (2m+1)! / (4 sqrt(pi) m!^2) * (9/4)^m, the total
// weight constant of infinite triangulations of an (m+2)-gon. Only ratios
// of C_m are rational; the absolute constant is used by the heavy-tail
// envelope, where log precision suffices.
double log_C(long m);
// log of P(|T| = n) under the free size law.
double log_free_size_prob(long n, long m);

}  // namespace uipt
