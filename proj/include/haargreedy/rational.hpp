#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace haargreedy {

/// Exact arbitrary-precision rational scalar. All coefficients, norms and
/// algorithm parameters are Rationals; there is no floating point in the core.
using Rational = mpq_class;

/// Parses "p/q" or "p" (base 10, optional sign). Throws std::invalid_argument
/// on malformed input or zero denominator. Result is in canonical reduced form.
Rational rational_from_string(const std::string& text);

/// Formats as "p/q" with an explicit positive denominator, e.g. "-3/4", "0/1".
std::string fraction_string(const Rational& value);

/// Deterministic decimal approximation in scientific notation with the given
/// number of significant digits (round half up). For plotting only; the "p/q"
/// form is authoritative.
std::string decimal_string(const Rational& value, int significant_digits = 17);

/// 2^exponent as an exact rational; exponent may be negative.
Rational pow2(long exponent);

inline Rational rational_abs(const Rational& value) {
    return value < 0 ? Rational(-value) : value;
}

}  // namespace haargreedy
