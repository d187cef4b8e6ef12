#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcvf/rational.hpp"
#include "rcvf/value.hpp"

namespace rcvf {

/// Process-wide knobs of the series model. Both are read atomically.
long default_precision();
void set_default_precision(long relative_order);
long exponent_denominator_cap();
void set_exponent_denominator_cap(long cap);

enum class Ordering { LT, EQ, GT };
const char* ordering_name(Ordering o);

struct Term {
  Rational exponent;
  Rational coefficient;

  bool operator==(const Term&) const = default;
};

/// Truncated Puiseux series in a positive infinitesimal eps with rational
/// exponents and rational coefficients.
///
/// A series is a finite list of known terms plus an optional absolute
/// precision N: every coefficient of eps^e with e >= N is unknown. Without a
/// precision the series is exact. Terms are kept sorted by exponent, with no
/// zero coefficients and every exponent below the precision.
///
/// Order: sign of the leading coefficient. Valuation: leading exponent.
/// Any decision that needs a leading term of an element whose known part is
/// empty at finite precision throws PrecisionExhausted.
class Series {
 public:
  Series() = default;  // exact zero
  Series(const Rational& c);  // NOLINT(google-explicit-constructor)
  Series(long c) : Series(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Series(std::vector<Term> terms, std::optional<Rational> precision);

  static Series monomial(const Rational& coefficient, const Rational& exponent);
  static Series eps(const Rational& exponent = Rational(1)) { return monomial(Rational(1), exponent); }
  /// Zero known terms, unknown from eps^precision on.
  static Series big_o(const Rational& precision) { return Series({}, precision); }

  const std::vector<Term>& terms() const { return terms_; }
  const std::optional<Rational>& precision() const { return precision_; }
  bool is_exact() const { return !precision_.has_value(); }
  bool has_visible_terms() const { return !terms_.empty(); }
  bool is_exact_zero() const { return terms_.empty() && is_exact(); }
  /// No known nonzero term (zero up to precision).
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Exact and of the form c*eps^0.
  bool is_exact_rational() const;

  Value valuation() const;
  /// Lowest exponent that may carry a nonzero coefficient: leading exponent,
  /// else the precision, else TOP.
  Value valuation_lower_bound() const;
  const Term& leading_term() const;
  /// -1, 0, +1. Throws PrecisionExhausted when undecidable.
  int sign() const;
  /// Coefficient of eps^0. Throws NotIntegral if the valuation is negative.
  Rational residue() const;
  Rational coefficient(const Rational& exponent) const;

  Series truncated(const Rational& precision) const;
  /// Multiplies by eps^shift.
  Series shifted(const Rational& shift) const;
  Series scaled(const Rational& factor) const;

  Series operator-() const;
  Series operator+(const Series& other) const;
  Series operator-(const Series& other) const;
  Series operator*(const Series& other) const;
  Series operator/(const Series& other) const { return *this * other.inverse(); }
  Series& operator+=(const Series& other) { return *this = *this + other; }
  Series& operator-=(const Series& other) { return *this = *this - other; }
  Series& operator*=(const Series& other) { return *this = *this * other; }

  /// Multiplicative inverse. Non-monomial inputs yield an infinite series that
  /// is cut `relative_order` past the leading exponent (default_precision()
  /// when omitted), or earlier when the input itself is truncated.
  Series inverse(std::optional<long> relative_order = std::nullopt) const;
  /// Square root with positive leading coefficient. Throws NegativeElement or
  /// NonSquareLeadingCoefficient.
  Series sqrt(std::optional<long> relative_order = std::nullopt) const;
  Series pow(long n) const;

  /// Structural equality: same known terms and same precision.
  bool operator==(const Series& other) const = default;
  /// Equal up to the common precision (difference has no known term).
  bool equals_up_to_precision(const Series& other) const { return (*this - other).is_zero(); }

  std::string to_string() const;

 private:
  void normalize();

  std::vector<Term> terms_;
  std::optional<Rational> precision_;
};

/// Compares a and b in the field order.
Ordering compare_order(const Series& a, const Series& b);

/// Free-function spellings of the field operations.
inline Value valuation(const Series& a) { return a.valuation(); }
inline Rational residue(const Series& a) { return a.residue(); }

}  // namespace rcvf
