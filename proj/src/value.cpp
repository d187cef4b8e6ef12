#include "rcvf/value.hpp"

#include "rcvf/errors.hpp"

namespace rcvf {

const Rational& Value::rational() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "TOP has no rational value");
  return *value_;
}

Value Value::operator+(const Value& other) const {
  if (is_top() || other.is_top()) return top();
  return Value(*value_ + *other.value_);
}

Value Value::operator-(const Value& other) const {
  if (other.is_top()) throw Error(ErrorCode::InvalidArgument, "subtracting TOP");
  if (is_top()) return top();
  return Value(*value_ - *other.value_);
}

bool Value::operator==(const Value& other) const {
  if (is_top() || other.is_top()) return is_top() && other.is_top();
  return *value_ == *other.value_;
}

std::strong_ordering Value::operator<=>(const Value& other) const {
  if (is_top()) return other.is_top() ? std::strong_ordering::equal : std::strong_ordering::greater;
  if (other.is_top()) return std::strong_ordering::less;
  int c = cmp(*value_, *other.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Value::to_string() const { return is_top() ? "TOP" : rcvf::to_string(*value_); }

}  // namespace rcvf
