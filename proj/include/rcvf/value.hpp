#pragma once

#include <compare>
#include <optional>
#include <string>

#include "rcvf/rational.hpp"

namespace rcvf {

/// Element of the value group Q extended by a top element (the valuation of zero).
class Value {
 public:
  Value() = default;  // TOP
  Value(const Rational& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Value(long v) : value_(Rational(v)) {}    // NOLINT(google-explicit-constructor)

  static Value top() { return Value(); }

  bool is_top() const { return !value_.has_value(); }
  const Rational& rational() const;

  /// True iff the value lies in 2Γ. Every rational does; TOP is treated as even.
  bool is_even() const { return true; }

  Value operator+(const Value& other) const;
  /// Undefined for TOP - TOP and finite - TOP (throws InvalidArgument).
  Value operator-(const Value& other) const;

  bool operator==(const Value& other) const;
  std::strong_ordering operator<=>(const Value& other) const;

  /// "TOP" or the canonical rational text.
  std::string to_string() const;

 private:
  std::optional<Rational> value_;
};

}  // namespace rcvf
