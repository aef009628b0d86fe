#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace uipt {

// All closed-form counts and probabilities are kept as exact rationals.
// mpq_class keeps values canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

Integer factorial(long n);
Integer binomial(long n, long k);

// base^e for possibly negative e; base must be nonzero when e < 0.
Rational pow_rational(const Rational& base, long e);

// Decimal rendering with the given number of significant digits after the
// point, suitable for CSV output. Exact when the value is terminating.
std::string decimal_string(const Rational& q, int digits = 17);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace uipt
