#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "rcvf/mpoly.hpp"
#include "rcvf/series.hpp"

namespace rcvf {

// Expression grammar:
//
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := '-' factor | base ('^' exponent)?
//   base     := rational | 'eps' | ident | '(' expr ')' | 'O' '(' expr ')'
//   exponent := ['-'] integer | '(' rational ')'
//   rational := ['-'] integer ('/' positive-integer)?
//
// `O(eps^q)` denotes an unknown tail from eps^q on. Rational exponents are
// only allowed on powers of eps. Division by a constant is folded into the
// coefficients; any other division yields an (unreduced) quotient.

/// Parses the grammar into a quotient; the denominator is 1 for polynomials.
/// Throws ParseError.
RationalFunction parse_rational_function(std::string_view text);
Polynomial parse_polynomial(std::string_view text);
Series parse_series(std::string_view text);

using Expression = std::variant<Series, Polynomial, RationalFunction>;
/// Narrowest kind: a series when there are no variables, a polynomial when the
/// denominator is constant.
Expression parse_expression(std::string_view text);

std::string to_string(const Polynomial& p);
std::string to_string(const RationalFunction& q);
std::string to_string(const ResiduePolynomial& p);
std::string to_string(const Expression& e);

/// Drops variables that do not occur.
Polynomial trim_variables(const Polynomial& p);
RationalFunction trim_variables(const RationalFunction& q);

}  // namespace rcvf
