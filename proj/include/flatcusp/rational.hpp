#pragma once

// Exact rational scalars. GMP supplies the arbitrary-precision arithmetic;
// mpq_class keeps results in lowest terms with positive denominator, which is
// the canonical form everything downstream relies on for structural equality.

#include <gmpxx.h>

#include <string>

namespace flatcusp {

using Integer = mpz_class;
using Rational = mpq_class;

// num/den in canonical form; throws ValidationError on zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

// Accepts "p", "-p", "p/q" with optional sign on either part, nothing else.
// Throws ParseError (location = the offending literal).
Rational parse_rational(const std::string& text);

// Canonical textual form: "p" when integral, "p/q" otherwise.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

Integer parse_integer(const std::string& text);

bool is_integer(const Rational& x);

// Throws ValidationError unless x is integral.
Integer to_integer(const Rational& x);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

} // namespace flatcusp
