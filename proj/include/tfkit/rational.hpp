#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tfkit {

/// Exact rational number.  All probabilities in this library are carried as
/// rationals; floating point appears only in the spacetime geometry and the
/// quantum oracle (before rationalization).
using Rational = mpq_class;

/// Builds a reduced rational with positive denominator.
Rational make_rational(long numerator, long denominator);

/// Parses "num/den" or "num" (base 10, optional leading '-', denominator
/// positive).  Throws std::invalid_argument on malformed input.
Rational rational_from_string(std::string_view text);

/// Canonical serialization, always "num/den" (e.g. "0/1", "-1/8").
std::string rational_to_string(const Rational& value);

/// Exactly floor(value) as a signed 64-bit integer.
std::int64_t rational_floor(const Rational& value);

/// Nearest-or-better rational approximation of x with denominator bounded by
/// max_denominator, via continued fractions.  For the final convergent h/k
/// the error is below 1/(k * max_denominator).  x must be finite.
Rational rationalize(double x, std::int64_t max_denominator);

} // namespace tfkit
