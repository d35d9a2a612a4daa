#ifndef POLYSIGN_RATIONAL_HPP
#define POLYSIGN_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <string_view>

#include "polysign/errors.hpp"

namespace polysign {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q" or "p"; canonicalized. Throws InvalidParameter on garbage or q == 0.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (always includes the denominator, so files round-trip
// without ambiguity).
std::string format_rational(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// floor(a/b) for b > 0.
Integer floor_div(const Integer& a, const Integer& b);

// floor of a rational (works for negative values).
Integer floor_rational(const Rational& q);

Rational pow_rational(const Rational& base, unsigned long e);
Integer pow_integer(const Integer& base, unsigned long e);

Integer binomial(unsigned long n, unsigned long k);

} // namespace polysign

#endif
