#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nambu {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

/// Parses "p", "p/q" or a plain decimal such as "-0.125" exactly.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Exact conversion of a finite double (every finite double is a dyadic
/// rational).
Rational rational_from_double(double x);

}  // namespace nambu
