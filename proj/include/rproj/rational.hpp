#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

namespace rproj {

/// Arbitrary-precision rational; all exact moment arithmetic runs on this.
using Rational = mpq_class;
using Integer = mpz_class;

/// Exact binary-fraction embedding of a finite double.
Rational to_rational(double value);

/// Nearest-ish double (truncating GMP conversion).
double to_double(const Rational& value);

/// Natural log of |value|, robust for magnitudes far outside double range.
/// Returns -inf for zero.
double log_abs(const Rational& value);

Rational pow(const Rational& base, unsigned long exponent);

/// Exact square root when `value` is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& value);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Parses "p", "p/q" or a decimal literal such as "0.25" exactly.
Rational parse_rational(const std::string& text);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

}  // namespace rproj
