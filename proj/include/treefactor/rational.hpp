#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace treefactor {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Exact "p/q" form. Integers are written with an explicit "/1".
std::string to_fraction_string(const Rational &r);

/// Parses "p/q" or "p". Throws ValidationError on malformed input or q == 0.
Rational parse_fraction(const std::string &text);

/// base^exponent for any integer exponent (base > 0).
Rational rational_power(unsigned long base, long exponent);

/// If r == base^k for some integer k, returns k.
std::optional<long> exact_log(const Rational &r, unsigned long base);

} // namespace treefactor
