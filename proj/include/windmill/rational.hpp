#pragma once

#include <gmpxx.h>

#include <string>

namespace windmill {

// All certificate math runs on exact rationals. GMP keeps canonical form
// (lowest terms, positive denominator), which the nonnegativity verdicts
// rely on: there is no rounding anywhere in the certification path.
using Rational = mpq_class;
using Integer = mpz_class;

// Builds num/den in canonical form. Throws on a zero denominator.
Rational make_fraction(Integer num, Integer den);

// Parses "p" or "p/q" with decimal integers (optional leading '-').
Rational parse_rational(const std::string& text);

// Canonical "p" or "p/q" text, inverse of parse_rational.
std::string to_string(const Rational& value);

Integer factorial(unsigned long n);

// n!! with the conventions (-1)!! = 0!! = 1; n < -1 is rejected.
Integer double_factorial(long n);

// 0 when k < 0 or k > n.
Integer binomial(long n, long k);

}  // namespace windmill
