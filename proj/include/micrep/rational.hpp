#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace micrep {

/// Exact rational scalar. GMP keeps every result in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Smallest integer not less than `value`.
Rational ceil(const Rational& value);
Rational floor(const Rational& value);
bool is_integer(const Rational& value);

/// Parses `["-"] digits ["/" digits]`. Throws ParseError on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Least common multiple of the denominators of `values` (1 when empty).
Integer common_denominator(const RationalVector& values);

/// `values` times the positive factor that makes every entry an integer
/// with no common divisor; the zero vector is returned unchanged.
RationalVector primitive_integer_vector(const RationalVector& values);

/// `values` times the common denominator only (entries integral, gcd kept).
RationalVector clear_denominators(const RationalVector& values);

bool is_zero(const RationalVector& values);

}  // namespace micrep
