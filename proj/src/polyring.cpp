#include "rcvf/polyring.hpp"

#include <cctype>

namespace rcvf {

namespace {

std::pair<std::string, long> split_name(const std::string& s) {
  std::size_t k = s.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
  if (k == s.size() || s.size() - k > 18) return {s, -1};
  return {s.substr(0, k), std::stol(s.substr(k))};
}

}  // namespace

bool variable_less(const std::string& a, const std::string& b) {
  auto [pa, na] = split_name(a);
  auto [pb, nb] = split_name(b);
  if (pa != pb) return pa < pb;
  if (na != nb) return na < nb;
  return a < b;
}

std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  if (a == b || b.empty()) return a;
  if (a.empty()) return b;
  std::vector<std::string> out = a;
  for (const auto& v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  std::sort(out.begin(), out.end(), variable_less);
  return out;
}

Series poly_eval(const RationalFunction& q, std::span<const Series> point) {
  auto vars = q.variables();
  if (vars.size() != point.size())
    throw Error(ErrorCode::VariableMismatch, "point arity " + std::to_string(point.size()) + " != " +
                                                 std::to_string(vars.size()));
  Series den = q.den.with_variables(vars).evaluate<Series>(point);
  if (den.is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "denominator vanishes at the point");
  Series num = q.num.with_variables(vars).evaluate<Series>(point);
  if (den.is_exact_rational() && den == Series(1)) return num;
  return num * den.inverse();
}

Series poly_eval(const RationalFunction& q, const std::vector<std::string>& vars,
                 std::span<const Series> point) {
  return poly_eval(with_variables(q, vars), point);
}

RationalFunction with_variables(const RationalFunction& q, const std::vector<std::string>& vars) {
  return {q.num.with_variables(vars), q.den.with_variables(vars)};
}

Value gauss_valuation(const Polynomial& q) {
  Value v = Value::top();
  for (const auto& [m, c] : q.terms()) v = std::min(v, c.valuation());
  return v;
}

Value gauss_valuation(const RationalFunction& q) {
  if (q.den.is_zero()) throw Error(ErrorCode::UndefinedGauss, "zero denominator");
  return gauss_valuation(q.num) - gauss_valuation(q.den);
}

ResiduePolynomial residue_layer(const Polynomial& q, const Rational& shift) {
  std::vector<std::pair<Monomial, Rational>> terms;
  for (const auto& [m, c] : q.terms()) {
    Rational r = c.shifted(-shift).residue();
    if (sgn(r) != 0) terms.emplace_back(m, r);
  }
  return ResiduePolynomial::from_terms(q.variables(), terms);
}

Polynomial lift(const ResiduePolynomial& q) {
  return q.map_coefficients([](const Rational& c) { return Series(c); });
}

RationalFunction lift(const ResidueQuotient& q) { return {lift(q.num), lift(q.den)}; }

Polynomial shift_coefficients(const Polynomial& q, const Rational& shift) {
  return q.map_coefficients([&](const Series& c) { return c.shifted(shift); });
}

Polynomial divide_by_constant(const Polynomial& q, const Series& c) {
  if (c.is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero constant");
  if (c.is_monomial() && c.is_exact()) {
    const Term& t = c.leading_term();
    return q.map_coefficients([&](const Series& a) { return a.shifted(-t.exponent).scaled(1 / t.coefficient); });
  }
  return q.scaled(c.inverse());
}

Polynomial affine_substitute(const Polynomial& q, const std::vector<std::string>& vars,
                             std::span<const Series> centers, std::span<const Series> scales) {
  auto all = merge_variables(q.variables(), vars);
  Polynomial aligned = q.with_variables(all);
  std::vector<Polynomial> images;
  images.reserve(all.size());
  for (const auto& name : all) {
    auto it = std::find(vars.begin(), vars.end(), name);
    Polynomial x = Polynomial::variable(name);
    if (it == vars.end()) {
      images.push_back(x);
    } else {
      std::size_t i = it - vars.begin();
      images.push_back(Polynomial(centers[i]) + x.scaled(scales[i]));
    }
  }
  return aligned.substitute(images);
}

RationalFunction affine_substitute(const RationalFunction& q, const std::vector<std::string>& vars,
                                   std::span<const Series> centers, std::span<const Series> scales) {
  return {affine_substitute(q.num, vars, centers, scales), affine_substitute(q.den, vars, centers, scales)};
}

RationalFunction SOSExpr::value() const {
  RationalFunction acc;
  for (const auto& s : summands) acc = acc + s * s;
  return acc;
}

RationalFunction ConeExpr::value(std::span<const Polynomial> constraints) const {
  RationalFunction acc;
  for (const auto& t : terms) {
    RationalFunction term = t.coefficient.value();
    for (std::size_t i : t.factors) {
      if (i >= constraints.size()) throw Error(ErrorCode::InvalidArgument, "cone factor index out of range");
      term = term * RationalFunction(constraints[i]);
    }
    acc = acc + term;
  }
  return acc;
}

bool verify_sos_expression(const RationalFunction& target, const SOSExpr& r) {
  try {
    return r.value().equals(target);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace rcvf
