#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stq {

// Exact rational number. mpq_class keeps every arithmetic result in lowest
// terms with a positive denominator; only hand-built values need
// canonicalize(), which make_rational() takes care of.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Accepts "p", "-p", "p/q" with optional surrounding whitespace. Throws
// InvalidArgument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace stq
