#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace watson {

/// GMP rational. Every library routine expects canonical values (lowest
/// terms, positive denominator); construct from a (p, q) pair with
/// make_rational or call canonicalize() before passing one in.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator);

/// Parses "p/q", integers, and decimal/scientific literals ("-1.25", "3e-2")
/// into an exact rational. Throws Error(parse_error) on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when integral).
std::string to_string(const Rational& q);

/// Exact decimal when the denominator is of the form 2^a 5^b, else "p/q".
std::string to_decimal_string(const Rational& q);

bool is_integer(const Rational& q);
bool is_nonpositive_integer(const Rational& q);

/// Distance from q to the closest element of {0, -1, -2, ...}.
Rational distance_to_nonpositive_integers(const Rational& q);

/// True when q lies within `guard` of a nonpositive integer.
bool near_nonpositive_integer(const Rational& q, double guard);

/// True when |q| <= guard.
bool near_zero(const Rational& q, double guard);

}  // namespace watson
