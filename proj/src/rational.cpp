#include "rcvf/rational.hpp"

#include <cmath>

#include "rcvf/errors.hpp"

namespace rcvf {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NegativeElement: return "NegativeElement";
    case ErrorCode::NonSquareLeadingCoefficient: return "NonSquareLeadingCoefficient";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::ExponentBlowup: return "ExponentBlowup";
    case ErrorCode::UndefinedGauss: return "UndefinedGauss";
    case ErrorCode::NotInfinitesimalDefinite: return "NotInfinitesimalDefinite";
    case ErrorCode::CoefficientsNotIntegral: return "CoefficientsNotIntegral";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
  }
  return "Unknown";
}

namespace {
std::string describe_parse(std::size_t offset, const std::vector<std::string>& expected,
                           const std::string& detail) {
  std::string s = "at offset " + std::to_string(offset) + ": " + detail;
  if (!expected.empty()) {
    s += " (expected";
    for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? ", " : " ") + expected[i];
    s += ")";
  }
  return s;
}
}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& detail)
    : Error(ErrorCode::Parse, describe_parse(offset, expected, detail)),
      offset_(offset),
      expected_(std::move(expected)) {}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return Error(ErrorCode::InvalidArgument, "not a rational: '" + text + "'"); };
  if (text.empty()) throw bad();
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  bool seen_digit = false, seen_slash = false, digit_after_slash = false;
  for (std::size_t k = i; k < text.size(); ++k) {
    char c = text[k];
    if (c >= '0' && c <= '9') {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw bad();
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) throw bad();
  std::string body = text[0] == '+' ? text.substr(1) : text;
  Rational q;
  if (q.set_str(body, 10) != 0) throw bad();
  if (q.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool is_rational_square(const Rational& q) { return rational_sqrt(q).has_value(); }

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const Integer& n = q.get_num();
  const Integer& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) return Rational(0);
  // Continued-fraction convergents p/q.
  long double value = x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    long double a = std::floor(value);
    Integer ai;
    mpz_set_d(ai.get_mpz_t(), static_cast<double>(a));
    Integer p2 = ai * p1 + p0;
    Integer q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    long double frac = value - a;
    if (frac < 1e-15L) break;
    value = 1.0L / frac;
  }
  if (q1 == 0) {
    Integer r;
    mpz_set_d(r.get_mpz_t(), std::round(x));
    return Rational(r);
  }
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

}  // namespace rcvf
