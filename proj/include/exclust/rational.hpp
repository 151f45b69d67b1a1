#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace exclust {

// Exact arbitrary-precision rational. mpq_class keeps values in lowest
// terms with positive denominator after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p/q" or decimal-free integer strings. Throws on malformed
// input or zero denominator.
Rational parse_rational(const std::string& s);

// Serializes in lowest terms, "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& q);

// q^e for e >= 0.
Rational rational_pow(const Rational& q, unsigned long e);

// Largest integer <= q / smallest integer >= q.
Integer rational_floor(const Rational& q);
Integer rational_ceil(const Rational& q);

// Smallest integer t >= sqrt(x) for x >= 0 given as the squared value,
// i.e. ceil of an exact square root without ever forming the root.
Integer ceil_sqrt(const Rational& squared);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace exclust
