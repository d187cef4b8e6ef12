#pragma once

#include <span>
#include <vector>

#include "rcvf/mpoly.hpp"
#include "rcvf/series.hpp"
#include "rcvf/value.hpp"

namespace rcvf {

/// Value of q at `point` (entries follow q.variables() order). Throws
/// DivisionByZero if the denominator vanishes there.
Series poly_eval(const RationalFunction& q, std::span<const Series> point);
/// Same, with the point given over an explicit variable list that contains
/// every variable of q.
Series poly_eval(const RationalFunction& q, const std::vector<std::string>& vars,
                 std::span<const Series> point);

/// Both parts re-expressed over `vars`.
RationalFunction with_variables(const RationalFunction& q, const std::vector<std::string>& vars);

/// Gauss valuation: minimum coefficient valuation, TOP for the zero polynomial.
Value gauss_valuation(const Polynomial& q);
/// num minus den. Throws UndefinedGauss for a zero denominator.
Value gauss_valuation(const RationalFunction& q);

/// Residue polynomial of q * eps^(-shift): the eps^0 coefficients after
/// shifting. Requires gauss_valuation(q) >= shift.
ResiduePolynomial residue_layer(const Polynomial& q, const Rational& shift);

/// Rational coefficients lifted to exact series.
Polynomial lift(const ResiduePolynomial& q);
RationalFunction lift(const ResidueQuotient& q);

/// Coefficients multiplied by eps^shift.
Polynomial shift_coefficients(const Polynomial& q, const Rational& shift);

/// Divides by a constant that is an exact monomial (kept exact). Other
/// constants are inverted to the default precision.
Polynomial divide_by_constant(const Polynomial& q, const Series& c);

/// Substitutes x_i -> center_i + scale_i * x_i for the listed variables.
Polynomial affine_substitute(const Polynomial& q, const std::vector<std::string>& vars,
                             std::span<const Series> centers, std::span<const Series> scales);
RationalFunction affine_substitute(const RationalFunction& q, const std::vector<std::string>& vars,
                                   std::span<const Series> centers, std::span<const Series> scales);

/// Sum of squares sum_i s_i^2.
struct SOSExpr {
  std::vector<RationalFunction> summands;

  RationalFunction value() const;
};

/// Element of the pre-order generated by constraints p: sum sigma_A * prod_{i in A} p_i.
struct ConeTerm {
  SOSExpr coefficient;
  std::vector<std::size_t> factors;  // multiset of constraint indices
};

struct ConeExpr {
  std::vector<ConeTerm> terms;

  RationalFunction value(std::span<const Polynomial> constraints) const;
};

/// Default cap on the total degree of prod_{i in A} p_i in a cone term.
inline constexpr unsigned kConeDegreeCap = 8;

/// True iff sum r_i^2 equals target as a rational-function identity.
bool verify_sos_expression(const RationalFunction& target, const SOSExpr& r);

}  // namespace rcvf
