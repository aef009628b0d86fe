#pragma once

#include <cstdint>

#include "rng.hpp"

namespace uipt {

// One boundary-chain step at parameter m: +1, or -k for k in 1..m.
// Sequential inversion with the closed-form ratio recurrence; expected O(1)
// work per call since the down probabilities decay like k^{-5/2}.
// m = 0 is the 2-gon boundary, where the step is +1 with probability 1.
long sample_step(long m, Pcg64& rng);

// Marked peel step at parameter m >= 0.
struct MarkedStep {
    enum Kind { NewUnmarked, NewMarked, Split } kind;
    long k = 0;  // boundary decrease for Split
};
MarkedStep sample_marked_step(long m, Pcg64& rng);

// Peel event inside a free triangulation of an (m+2)-gon.
// Returns 0 for a new vertex, -1 for the terminal 2-gon gluing (m = 0 only),
// and i in 1..m when the peel triangle closes onto boundary vertex x_i.
// The split law is symmetric in i <-> m+1-i; sampling walks the folded law
// and flips a coin, so the walk stays short.
long sample_free_peel(long m, Pcg64& rng);

// Number of internal vertices of a free triangulation of an (m+2)-gon.
// Sequential inversion over n with the exact weight ratio recurrence up to
// the crossover n_star, then dominated rejection under the envelope
// c_m n^{-5/2} with c_m = C_m / Z_m (the weights w_n n^{5/2} increase to
// c_m, so the envelope is rigorous). For large m the crossover moves up to
// ceil(m^2/400): the skipped head mass is below e^{-133}.
std::int64_t sample_free_size(long m, Pcg64& rng, long n_star = 10000);

}  // namespace uipt
