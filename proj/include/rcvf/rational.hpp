#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace rcvf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text: "a" or "a/b" with b > 0, lowest terms.
std::string to_string(const Rational& q);

/// Parses "a" or "a/b" (optional leading '-'). Throws Error(InvalidArgument).
Rational parse_rational(const std::string& text);

bool is_integer(const Rational& q);
bool is_rational_square(const Rational& q);
/// Non-negative square root when q is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Closest double; only used for heuristics, never for decisions.
inline double to_double(const Rational& q) { return q.get_d(); }

/// Best rational approximation of x with denominator at most max_den
/// (continued fractions).
Rational rationalize(double x, long max_den);

}  // namespace rcvf
